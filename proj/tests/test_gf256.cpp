#include <doctest.h>

#include <algorithm>
#include <random>

#include "field_oracle.hpp"
#include "ncdag/gf256.hpp"
#include "ncdag/random.hpp"

using namespace ncdag;
using gf256::Matrix;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (auto& v : m.row(r)) v = rng.byte();
  return m;
}

std::vector<std::vector<std::uint8_t>> to_rows(const Matrix& m) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

}  // namespace

TEST_CASE("add is xor") {
  CHECK(gf256::add(0x00, 0x57) == 0x57);
  CHECK(gf256::add(0x57, 0x57) == 0x00);
  CHECK(gf256::add(0x53, 0xCA) == 0x99);
}

TEST_CASE("mul examples") {
  CHECK(gf256::mul(0x00, 0xAB) == 0x00);
  CHECK(gf256::mul(0x01, 0xCA) == 0xCA);
  CHECK(oracle::mul(0x53, 0xCA) == 0x01);
  CHECK(gf256::mul(0x53, 0xCA) == 0x01);
  // FIPS-197 worked example: {57} * {83} = {c1}
  CHECK(gf256::mul(0x57, 0x83) == 0xC1);
}

TEST_CASE("product table matches the reference multiply exhaustively") {
  for (int x = 0; x < 256; ++x) {
    for (int y = 0; y < 256; ++y) {
      const auto a = static_cast<std::uint8_t>(x);
      const auto b = static_cast<std::uint8_t>(y);
      REQUIRE(gf256::mul(a, b) == oracle::mul(a, b));
      REQUIRE(gf256::mul_slow(a, b) == oracle::mul(a, b));
    }
  }
}

TEST_CASE("inverse") {
  CHECK(gf256::inv(0x01) == 0x01);
  CHECK(oracle::inv(0x53) == 0xCA);
  CHECK(gf256::inv(0x53) == 0xCA);
  CHECK_THROWS_AS(gf256::inv(0x00), std::domain_error);
  CHECK_THROWS_WITH(gf256::inv(0x00), "zero has no inverse");
  CHECK_THROWS_AS(gf256::div(0x10, 0x00), std::domain_error);

  for (int x = 1; x < 256; ++x) {
    const auto e = static_cast<std::uint8_t>(x);
    REQUIRE(gf256::mul(e, gf256::inv(e)) == 0x01);
    REQUIRE(gf256::inv(e) == oracle::inv(e));
  }
}

TEST_CASE("field axioms on sampled triples") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto x = rng.byte(), y = rng.byte(), z = rng.byte();
    REQUIRE(gf256::add(x, y) == gf256::add(y, x));
    REQUIRE(gf256::mul(x, y) == gf256::mul(y, x));
    REQUIRE(gf256::add(gf256::add(x, y), z) == gf256::add(x, gf256::add(y, z)));
    REQUIRE(gf256::mul(gf256::mul(x, y), z) == gf256::mul(x, gf256::mul(y, z)));
    REQUIRE(gf256::mul(x, gf256::add(y, z)) == gf256::add(gf256::mul(x, y), gf256::mul(x, z)));
    REQUIRE(gf256::add(x, x) == 0);
  }
}

TEST_CASE("axpy and scale") {
  std::vector<std::uint8_t> dst{1, 2, 3};
  const std::vector<std::uint8_t> src{0x53, 0x00, 0xFF};
  gf256::axpy(dst, src, 0xCA);
  CHECK(dst[0] == (1 ^ 0x01));
  CHECK(dst[1] == 2);
  CHECK(dst[2] == (3 ^ oracle::mul(0xFF, 0xCA)));
  gf256::scale(dst, 0x00);
  CHECK(std::all_of(dst.begin(), dst.end(), [](auto v) { return v == 0; }));
}

TEST_CASE("rank") {
  CHECK(gf256::rank(Matrix::identity(12)) == 12);

  Matrix dup(0, 12);
  std::vector<std::uint8_t> r(12, 0);
  r[3] = 0x41;
  r[7] = 0x09;
  dup.append_row(r);
  dup.append_row(r);
  CHECK(gf256::rank(dup) == 1);

  CHECK(gf256::rank(Matrix(5, 12)) == 0);

  SUBCASE("random 8x12 agrees with the naive oracle") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
      const auto m = random_matrix(8, 12, rng);
      REQUIRE(gf256::rank(m) == oracle::rank(to_rows(m)));
    }
  }

  SUBCASE("low-rank constructions agree with the oracle") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const std::size_t k = 1 + rng.below(6);
      const auto basis = random_matrix(k, 12, rng);
      const auto mix = random_matrix(10, k, rng);
      const auto m = gf256::multiply(mix, basis);
      const auto expect = oracle::rank(to_rows(m));
      REQUIRE(expect <= k);
      REQUIRE(gf256::rank(m) == expect);
    }
  }
}

TEST_CASE("rank is invariant under row swaps and nonzero row scaling") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    auto m = random_matrix(1 + rng.below(12), 12, rng);
    if (rng.bernoulli(0.5) && m.rows() > 2) {
      // force dependence
      std::vector<std::uint8_t> copy(m.row(0).begin(), m.row(0).end());
      std::copy(copy.begin(), copy.end(), m.row(1).begin());
    }
    const auto base = gf256::rank(m);
    auto swapped = m;
    swapped.swap_rows(0, rng.below(m.rows()));
    REQUIRE(gf256::rank(swapped) == base);
    auto scaled = m;
    gf256::scale(scaled.row(rng.below(m.rows())), static_cast<std::uint8_t>(1 + rng.below(255)));
    REQUIRE(gf256::rank(scaled) == base);
  }
}

TEST_CASE("solve") {
  Rng rng(21);

  SUBCASE("identity leaves rhs unchanged") {
    const auto rhs = random_matrix(12, 40, rng);
    CHECK(gf256::solve(Matrix::identity(12), rhs) == rhs);
  }

  SUBCASE("diag(2) on all-0x02 rows gives all-0x01") {
    Matrix d(12, 12);
    for (std::size_t i = 0; i < 12; ++i) d.at(i, i) = 2;
    Matrix rhs(12, 16);
    for (std::size_t r = 0; r < 12; ++r)
      for (auto& v : rhs.row(r)) v = 0x02;
    const auto x = gf256::solve(d, rhs);
    for (std::size_t r = 0; r < 12; ++r)
      for (auto v : x.row(r)) REQUIRE(v == 0x01);
  }

  SUBCASE("re-multiplying the solution reproduces rhs") {
    int solved = 0;
    for (int t = 0; t < 100; ++t) {
      const auto a = random_matrix(12, 12, rng);
      const auto rhs = random_matrix(12, 64, rng);
      if (oracle::rank(to_rows(a)) < 12) {
        CHECK_THROWS_AS(gf256::solve(a, rhs), gf256::SingularMatrixError);
        continue;
      }
      REQUIRE(gf256::multiply(a, gf256::solve(a, rhs)) == rhs);
      ++solved;
    }
    CHECK(solved > 90);
  }

  SUBCASE("singular matrix is not yet decodable") {
    auto a = random_matrix(12, 12, rng);
    std::vector<std::uint8_t> first(a.row(0).begin(), a.row(0).end());
    std::copy(first.begin(), first.end(), a.row(11).begin());
    CHECK_THROWS_WITH_AS(gf256::solve(a, Matrix(12, 4)), "not yet decodable", gf256::SingularMatrixError);
  }

  SUBCASE("shape errors") {
    CHECK_THROWS_AS(gf256::solve(Matrix(3, 4), Matrix(3, 1)), std::invalid_argument);
    CHECK_THROWS_AS(gf256::solve(Matrix::identity(4), Matrix(3, 1)), std::invalid_argument);
  }
}
