#include "ncdag/gf256.hpp"

#include <array>
#include <utility>

namespace ncdag::gf256 {

namespace {

struct Tables {
  std::array<Element, 256 * 256> product{};
  std::array<Element, 256> inverse{};

  Tables() {
    // 0x03 generates the multiplicative group under 0x11B.
    std::array<Element, 512> exp{};
    std::array<int, 256> log{};
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<Element>(x);
      log[x] = i;
      x = mul_slow(static_cast<Element>(x), 0x03);
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];

    for (unsigned a = 1; a < 256; ++a) {
      for (unsigned b = 1; b < 256; ++b) {
        product[(a << 8) | b] = exp[log[a] + log[b]];
      }
      inverse[a] = exp[255 - log[a]];
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

Element mul(Element x, Element y) noexcept {
  return tables().product[(static_cast<unsigned>(x) << 8) | y];
}

Element inv(Element x) {
  if (x == 0) throw std::domain_error("zero has no inverse");
  return tables().inverse[x];
}

Element div(Element x, Element y) { return mul(x, inv(y)); }

void axpy(std::span<Element> dst, std::span<const Element> src, Element c) noexcept {
  if (c == 0) return;
  const Element* row = &tables().product[static_cast<unsigned>(c) << 8];
  const std::size_t n = dst.size() < src.size() ? dst.size() : src.size();
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
}

void scale(std::span<Element> row, Element c) noexcept {
  const Element* t = &tables().product[static_cast<unsigned>(c) << 8];
  for (auto& v : row) v = t[v];
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Element>>& rows) {
  if (rows.empty()) return {};
  Matrix m(0, rows.front().size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const Element> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("row length does not match matrix width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row(a);
  auto rb = row(b);
  for (std::size_t i = 0; i < cols_; ++i) std::swap(ra[i], rb[i]);
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < work.cols() && r < work.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < work.rows() && work.at(pivot, c) == 0) ++pivot;
    if (pivot == work.rows()) continue;
    work.swap_rows(r, pivot);
    const Element f = inv(work.at(r, c));
    scale(work.row(r), f);
    for (std::size_t i = r + 1; i < work.rows(); ++i) {
      axpy(work.row(i), work.row(r), work.at(i, c));
    }
    ++r;
  }
  return r;
}

Matrix solve(const Matrix& coeffs, const Matrix& rhs) {
  if (coeffs.rows() != coeffs.cols()) throw std::invalid_argument("coefficient matrix must be square");
  if (rhs.rows() != coeffs.rows()) throw std::invalid_argument("rhs row count does not match");

  const std::size_t n = coeffs.rows();
  Matrix a = coeffs;
  Matrix x = rhs;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError();
    a.swap_rows(c, pivot);
    x.swap_rows(c, pivot);
    const Element f = inv(a.at(c, c));
    scale(a.row(c), f);
    scale(x.row(c), f);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const Element k = a.at(i, c);
      if (k == 0) continue;
      axpy(a.row(i), a.row(c), k);
      axpy(x.row(i), x.row(c), k);
    }
  }
  return x;
}

Matrix multiply(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("dimension mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) axpy(out.row(i), rhs.row(k), lhs.at(i, k));
  }
  return out;
}

}  // namespace ncdag::gf256
