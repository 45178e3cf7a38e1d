#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "varlp/errors.hpp"
#include "varlp/rationals.hpp"

using varlp::BigInt;
using varlp::FindResult;
using varlp::Rational;
using varlp::RationalEnum;

namespace {

// Independent oracle: the Calkin-Wilf sequence via Newman's recurrence
// x -> 1 / (2 floor(x) + 1 - x) on exact small fractions, starting at 1/1.
// The enumeration under test is its subsequence of values >= 1.
struct Frac {
  long long num = 1;
  long long den = 1;
};

Frac newman_step(Frac x) {
  long long fl = x.num / x.den;
  return {x.den, (2 * fl + 1) * x.den - x.num};
}

std::vector<Frac> filtered_calkin_wilf(std::size_t count) {
  std::vector<Frac> out;
  Frac x{1, 1};
  std::uint64_t cw_index = 1;
  while (out.size() < count) {
    if (x.num >= x.den) out.push_back(x);  // keep values >= 1
    x = newman_step(x);
    ++cw_index;
  }
  return out;
}

int bit_length(std::uint64_t v) {
  int bits = 0;
  while (v != 0) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

}  // namespace

TEST_CASE("rational constructor reduces and validates") {
  Rational q(6, 4);
  CHECK(q.str() == "3/2");
  CHECK(q.value() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(Rational(1, 2), std::invalid_argument);  // below one
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("enumeration matches the filtered Calkin-Wilf oracle") {
  RationalEnum r;
  CHECK(r.scheme_id() == "calkin-wilf-geq1");
  std::vector<Frac> oracle = filtered_calkin_wilf(4000);
  for (std::size_t i = 1; i <= oracle.size(); ++i) {
    Rational got = r.at(BigInt(std::uint64_t(i)));
    std::string want =
        std::to_string(oracle[i - 1].num) + "/" + std::to_string(oracle[i - 1].den);
    REQUIRE(got.str() == want);
  }
}

TEST_CASE("filtered entries sit at odd Calkin-Wilf positions") {
  // The subsequence structure the decoder relies on: every second
  // Calkin-Wilf entry is >= 1, starting with the first.
  Frac x{1, 1};
  for (int i = 1; i <= 2000; ++i) {
    bool geq1 = x.num >= x.den;
    CHECK(geq1 == (i % 2 == 1));
    x = newman_step(x);
  }
}

TEST_CASE("index_of inverts at") {
  RationalEnum r;
  for (std::uint64_t i = 1; i <= 2000; ++i) {
    CHECK(r.index_of(r.at(BigInt(i))) == BigInt(i));
  }
}

TEST_CASE("index_of and at invert on huge indices") {
  RationalEnum r;
  BigInt big = BigInt(1) << 40;
  for (int off = 0; off < 4; ++off) {
    BigInt idx = big + off;
    CHECK(r.index_of(r.at(idx)) == idx);
  }
}

TEST_CASE("at rejects nonpositive indices") {
  RationalEnum r;
  CHECK_THROWS_AS(r.at(BigInt(0)), std::invalid_argument);
  CHECK_THROWS_AS(r.at(BigInt(-3)), std::invalid_argument);
}

TEST_CASE("depth grows logarithmically in the index") {
  RationalEnum r;
  for (std::uint64_t i = 1; i <= 512; ++i) {
    // Filtered index i decodes node 2i - 1, whose tree level is its bit
    // length; depth counts from 0 at the root, so indices of depth d are
    // exactly those in (2^(d-1), 2^d].
    CHECK(r.depth_of_index(BigInt(i)) == bit_length(2 * i - 1) - 1);
  }
}

TEST_CASE("find_index_above returns the minimal admissible index inside the horizon") {
  RationalEnum r;
  std::vector<Frac> oracle = filtered_calkin_wilf(4000);
  struct Probe {
    double target;
    double delta;
    std::uint64_t min_index;
  };
  for (Probe pr : std::vector<Probe>{{1.3, 0.2, 0},
                                     {1.0, 0.05, 0},
                                     {2.0, 0.5, 2},
                                     {1.5, 0.25, 3},
                                     {3.0, 1.0, 10},
                                     {1.25, 0.3, 100}}) {
    double lo = pr.target;
    double hi = pr.target + pr.delta;
    std::uint64_t want = 0;
    for (std::size_t i = 1; i <= oracle.size(); ++i) {
      if (i <= pr.min_index) continue;
      long double num = oracle[i - 1].num;
      long double den = oracle[i - 1].den;
      if (num >= (long double)lo * den && num <= (long double)hi * den) {
        want = i;
        break;
      }
    }
    REQUIRE(want != 0);  // all probes are designed to hit inside the oracle
    FindResult got = r.find_index_above(pr.target, pr.delta, BigInt(pr.min_index));
    CHECK(got.index == BigInt(want));
    CHECK(got.value.str() ==
          std::to_string(oracle[want - 1].num) + "/" + std::to_string(oracle[want - 1].den));
  }
}

TEST_CASE("find realizes an exact rational hit") {
  RationalEnum r;
  // A sliver of a window still contains 3/2 itself; the window must have
  // positive width by contract.
  FindResult got = r.find_index_above(1.5, 1e-9, BigInt(0));
  CHECK(got.value.str() == "3/2");
  CHECK(r.at(got.index).str() == "3/2");
  CHECK_THROWS_AS(r.find_index_above(1.5, 0.0, BigInt(0)), varlp::domain_error);
}

TEST_CASE("narrow window past the horizon falls back to the analytic construction") {
  RationalEnum r;
  // The only small-index value in [1.5, 1.51] is 3/2 at index 3, so asking
  // for an index above 3 forces a deep construction.  The result need not
  // be minimal, but it must be consistent and deterministic.
  FindResult a = r.find_index_above(1.5, 0.01, BigInt(3));
  CHECK(a.index > 3);
  CHECK(a.value.value() >= 1.5);
  CHECK(a.value.value() <= 1.51);
  CHECK(r.at(a.index).str() == a.value.str());
  FindResult b = r.find_index_above(1.5, 0.01, BigInt(3));
  CHECK(a.index == b.index);
  CHECK(a.value.str() == b.value.str());
}

TEST_CASE("locate_above produces increasing indices when called repeatedly") {
  RationalEnum r;
  BigInt min_index(3);
  double prev_value = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    FindResult got = r.find_index_above(1.5, 0.01, min_index);
    CHECK(got.index > min_index);
    CHECK(got.value.value() >= 1.5);
    CHECK(got.value.value() <= 1.51);
    (void)prev_value;
    min_index = got.index;
    prev_value = got.value.value();
  }
}

TEST_CASE("options carry the documented defaults") {
  RationalEnum r;
  CHECK(r.options().scan_horizon == (1u << 20));
  CHECK(r.options().depth_budget == (1u << 22));
}
