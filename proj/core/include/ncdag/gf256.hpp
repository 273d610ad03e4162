#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

// Arithmetic over GF(2^8) with the reduction polynomial x^8 + x^4 + x^3 + x + 1
// (0x11B), plus the small dense linear algebra used by the coding layer.
namespace ncdag::gf256 {

using Element = std::uint8_t;

inline constexpr unsigned kPolynomial = 0x11B;

constexpr Element add(Element x, Element y) noexcept { return x ^ y; }
constexpr Element sub(Element x, Element y) noexcept { return x ^ y; }

// Table lookup into a 64 KiB product table built on first use.
Element mul(Element x, Element y) noexcept;

// Throws std::domain_error for zero.
Element inv(Element x);

// x / y; throws std::domain_error for y == 0.
Element div(Element x, Element y);

// Shift-and-add multiply with explicit reduction. Independent of the tables.
constexpr Element mul_slow(Element x, Element y) noexcept {
  unsigned a = x;
  unsigned b = y;
  unsigned acc = 0;
  while (b != 0) {
    if (b & 1u) acc ^= a;
    a <<= 1;
    if (a & 0x100u) a ^= kPolynomial;
    b >>= 1;
  }
  return static_cast<Element>(acc);
}

// dst[i] += c * src[i]
void axpy(std::span<Element> dst, std::span<const Element> src, Element c) noexcept;
// row[i] *= c
void scale(std::span<Element> row, Element c) noexcept;

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError() : std::runtime_error("not yet decodable") {}
};

// Dense row-major byte matrix. Used both for coefficient matrices and for the
// payload rows that ride along with them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Element>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Element> values);
  void swap_rows(std::size_t a, std::size_t b);

  std::span<const Element> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

using CoeffMatrix = Matrix;

// Row rank by Gaussian elimination on a copy.
std::size_t rank(const Matrix& m);

// Solves coeffs * X = rhs. coeffs must be square and full rank.
Matrix solve(const Matrix& coeffs, const Matrix& rhs);

// coeffs * x
Matrix multiply(const Matrix& lhs, const Matrix& rhs);

}  // namespace ncdag::gf256
