#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "varlp/errors.hpp"
#include "varlp/rationals.hpp"
#include "varlp/sequence_norms.hpp"

using varlp::BigInt;
using varlp::boxplus;
using varlp::double_norm;
using varlp::ExponentLadder;
using varlp::ladder_norm;
using varlp::Nesting;
using varlp::RationalEnum;
using varlp::SparseEntry;
using varlp::SparseVector;
using varlp::VarMatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended-precision reference for the two-term p-sum and the left fold.
long double boxplus_ref(long double a, long double b, long double p) {
  if (a < b) std::swap(a, b);
  if (a == 0.0L) return 0.0L;
  if (std::isinf((double)p)) return a;
  return a * std::exp(std::log1p(std::pow(b / a, p)) / p);
}

long double fold_ref(const std::vector<double>& x, const std::vector<double>& con) {
  long double acc = std::fabs((long double)x.front());
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc = boxplus_ref(acc, std::fabs((long double)x[i]), con[i - 1]);
  }
  return acc;
}

}  // namespace

TEST_CASE("boxplus frozen values") {
  CHECK(boxplus(3.0, 4.0, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(boxplus(1.0, 1.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(boxplus(3.0, 4.0, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
  // Independent extended-precision evaluation of (3^2.25 + 4^2.25)^(1/2.25).
  long double want = std::pow(std::pow(3.0L, 2.25L) + std::pow(4.0L, 2.25L), 1.0L / 2.25L);
  CHECK((double)want == doctest::Approx(4.8230182).epsilon(1e-6));
  CHECK(boxplus(3.0, 4.0, 2.25) == doctest::Approx((double)want).epsilon(1e-14));
}

TEST_CASE("boxplus handles the infinite exponent and extreme magnitudes") {
  CHECK(boxplus(3.0, 4.0, kInf) == 4.0);
  CHECK(boxplus(0.0, 0.0, 2.0) == 0.0);
  CHECK(boxplus(5.0, 0.0, 7.3) == 5.0);
  // The max-factored form must survive exponents that overflow a naive sum.
  CHECK(boxplus(1e200, 1e200, 60.0) ==
        doctest::Approx(1e200 * std::pow(2.0, 1.0 / 60.0)).epsilon(1e-12));
  CHECK(boxplus(1e-200, 1e-200, 60.0) ==
        doctest::Approx(1e-200 * std::pow(2.0, 1.0 / 60.0)).epsilon(1e-12));
}

TEST_CASE("boxplus rejects invalid input") {
  CHECK_THROWS_AS(boxplus(-1.0, 2.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(boxplus(1.0, 2.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(boxplus(1.0, std::nan(""), 2.0), std::invalid_argument);
}

TEST_CASE("ladder norm frozen nested value") {
  // ((1 # 1) # 1) with connectors 2, 3 = (2^(3/2) + 1)^(1/3).
  double got = ladder_norm({1.0, 1.0, 1.0}, ExponentLadder{{2.0, 3.0}});
  double want = std::cbrt(std::pow(2.0, 1.5) + 1.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-15));
  CHECK(want == doctest::Approx(1.5643724).epsilon(1e-6));
}

TEST_CASE("ladder norm agrees with the extended-precision fold on random data") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-8.0, 8.0);
  std::uniform_real_distribution<double> expo(1.0, 24.0);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t m = 1 + rng() % 10;
    std::vector<double> x, con;
    for (std::size_t i = 0; i < m; ++i) x.push_back(val(rng));
    for (std::size_t i = 0; i + 1 < m; ++i) con.push_back(expo(rng));
    double got = ladder_norm(x, ExponentLadder{con});
    long double want = fold_ref(x, con);
    CHECK(got == doctest::Approx((double)want).epsilon(1e-13));
  }
}

TEST_CASE("left and right nesting differ in general but agree for constant exponents") {
  std::vector<double> x = {1.0, 2.0, 3.0};
  double left = ladder_norm(x, ExponentLadder{{1.0, 3.0}}, Nesting::kLeft);
  double right = ladder_norm(x, ExponentLadder{{1.0, 3.0}}, Nesting::kRight);
  CHECK(left != right);
  // ((1 # 2)_1 # 3)_3 = (27 + 27)^(1/3) vs (1 # (2 # 3)_3)_1 = 1 + 35^(1/3).
  CHECK(left == doctest::Approx(std::cbrt(54.0)).epsilon(1e-14));
  CHECK(right == doctest::Approx(1.0 + std::cbrt(35.0)).epsilon(1e-14));
  double l2 = ladder_norm(x, ExponentLadder{{2.0, 2.0}}, Nesting::kLeft);
  double r2 = ladder_norm(x, ExponentLadder{{2.0, 2.0}}, Nesting::kRight);
  CHECK(l2 == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));
  CHECK(r2 == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));
}

TEST_CASE("ladder norm validates connector count") {
  CHECK_THROWS_AS(ladder_norm({1.0, 2.0}, ExponentLadder{{}}), std::invalid_argument);
  CHECK_NOTHROW(ladder_norm({1.0}, ExponentLadder{{}}));
  CHECK_THROWS_AS(ladder_norm({}, ExponentLadder{{}}), std::invalid_argument);
}

TEST_CASE("lattice monotonicity of the fold") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(0.0, 5.0);
  std::uniform_real_distribution<double> expo(1.0, 16.0);
  for (int rep = 0; rep < 500; ++rep) {
    std::size_t m = 1 + rng() % 8;
    std::vector<double> x, y, con;
    for (std::size_t i = 0; i < m; ++i) {
      double v = val(rng);
      x.push_back(v);
      y.push_back(v + val(rng));
    }
    for (std::size_t i = 0; i + 1 < m; ++i) con.push_back(expo(rng));
    CHECK(ladder_norm(x, ExponentLadder{con}) <= ladder_norm(y, ExponentLadder{con}));
  }
}

TEST_CASE("zero coordinates collapse exactly") {
  std::vector<double> x = {2.0, 0.0, 3.0, 0.0};
  std::vector<double> con = {99.0, 2.0, 42.0};
  // Connectors adjacent to zero coordinates are irrelevant.
  double got = ladder_norm(x, ExponentLadder{con});
  CHECK(got == ladder_norm({2.0, 3.0}, ExponentLadder{{2.0}}));
}

TEST_CASE("sparse norm decodes connectors from the enumeration") {
  RationalEnum r;
  // Positions 1 and 3: the entry at position 3 joins through r(2) = 2/1.
  SparseVector v{{{BigInt(1), 3.0}, {BigInt(3), 4.0}}};
  CHECK(varlp::sparse_norm(v, r) == doctest::Approx(5.0).epsilon(1e-14));
  // Positions 1 and 2: connector r(1) = 1/1.
  SparseVector w{{{BigInt(1), 3.0}, {BigInt(2), 4.0}}};
  CHECK(varlp::sparse_norm(w, r) == doctest::Approx(7.0).epsilon(1e-14));
  SparseVector empty{{}};
  CHECK(varlp::sparse_norm(empty, r) == 0.0);
}

TEST_CASE("sparse norm ignores explicit zeros") {
  RationalEnum r;
  SparseVector a{{{BigInt(2), 1.5}, {BigInt(7), -2.5}}};
  SparseVector b{{{BigInt(1), 0.0}, {BigInt(2), 1.5}, {BigInt(5), 0.0}, {BigInt(7), -2.5}}};
  CHECK(varlp::sparse_norm(a, r) == varlp::sparse_norm(b, r));
}

TEST_CASE("sparse vector arithmetic and validation") {
  SparseVector a{{{BigInt(1), 1.0}, {BigInt(4), -2.0}}};
  SparseVector b{{{BigInt(4), 2.0}, {BigInt(9), 5.0}}};
  SparseVector sum = SparseVector::add(a, b);
  REQUIRE(sum.entries().size() == 3);
  CHECK(sum.entries()[1].value == 0.0);
  SparseVector diff = SparseVector::subtract(a, a);
  CHECK(diff.zero());
  SparseVector mag = a.abs();
  CHECK(mag.entries()[1].value == 2.0);
  SparseVector sc = a.scaled(-3.0);
  CHECK(sc.entries()[0].value == -3.0);
  CHECK_THROWS_AS(SparseVector({{BigInt(3), 1.0}, {BigInt(2), 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({{BigInt(0), 1.0}}), std::invalid_argument);
}

TEST_CASE("double norm frozen example and row independence") {
  VarMatrix m;
  m.rows = {{3.0, 4.0}, {0.0, 12.0}};
  CHECK(double_norm(m, {2.0}, {2.0}) == doctest::Approx(13.0).epsilon(1e-14));
  // Ragged rows are allowed; a singleton row needs no inner connector.
  VarMatrix ragged;
  ragged.rows = {{3.0, 4.0}, {12.0}};
  CHECK(double_norm(ragged, {2.0}, {2.0}) == doctest::Approx(13.0).epsilon(1e-14));
}

TEST_CASE("double norm validates connector lists") {
  VarMatrix m;
  m.rows = {{1.0, 2.0}, {3.0, 4.0}};
  CHECK_THROWS_AS(double_norm(m, {}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(double_norm(m, {2.0}, {}), std::invalid_argument);
  CHECK_NOTHROW(double_norm(m, {2.0, 3.0, 4.0}, {2.0, 3.0}));  // longer is fine
}
