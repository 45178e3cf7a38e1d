#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace varlp {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction num/den with value >= 1.
struct Rational {
  BigInt num{1};
  BigInt den{1};

  Rational() = default;
  Rational(BigInt n, BigInt d);  // reduces; rejects values < 1

  double value() const;
  std::string str() const;  // "num/den"

  friend bool operator==(const Rational& a, const Rational& b) = default;
};

struct FindResult {
  BigInt index;
  Rational value;
};

struct RationalEnumOptions {
  // Largest index reachable by the exact linear scan (and kept memoized).
  std::uint64_t scan_horizon = std::uint64_t{1} << 20;
  // Cap on the binary depth of analytically constructed indices; brackets
  // needing more depth than this raise budget_error.
  std::uint64_t depth_budget = std::uint64_t{1} << 22;
};

// Fixed enumeration of Q ∩ [1, ∞) without repetition: the Calkin–Wilf
// sequence restricted to its odd positions, which are exactly the values
// >= 1.  index 1 -> 1/1, 2 -> 2/1, 3 -> 3/2, 4 -> 3/1, ...
//
// Indices are arbitrary-precision: a rational within delta above a target
// may first occur at a position exponential in 1/delta, and placement in the
// embedding pipeline genuinely visits such positions.  Values and indices
// convert both ways in closed form, so evaluation at astronomically large
// indices is cheap.
class RationalEnum {
 public:
  explicit RationalEnum(RationalEnumOptions opts = {});

  static constexpr std::string_view scheme_id() { return "calkin-wilf-geq1"; }

  // Value at a 1-based index (closed-form decode; any index size).
  Rational at(const BigInt& index) const;

  // Inverse of at().
  BigInt index_of(const Rational& x) const;

  // Binary depth of the tree node behind an index; indices of depth d are
  // exactly those in (2^(d-1), 2^d].
  static std::uint64_t depth_of_index(const BigInt& index);

  // Smallest index i > min_index with value in [target, target + delta],
  // provided that index lies within the scan horizon.  Beyond the horizon a
  // valid (bracketed, strictly above min_index) index is returned without a
  // minimality guarantee; comparisons against the bracket are exact since
  // doubles are dyadic rationals.  Throws budget_error when satisfying the
  // bracket would exceed the depth budget (delta near machine epsilon).
  FindResult find_index_above(double target, double delta, const BigInt& min_index) const;

  // Analytic search only: some index > min_index whose value lies in
  // [target, target + delta], biased toward the shallowest admissible tree
  // depth.  This is what placement threads through; it never scans.
  FindResult locate_above(double target, double delta, const BigInt& min_index) const;

  const RationalEnumOptions& options() const { return opts_; }

 private:
  bool scan_range(std::uint64_t from, std::uint64_t to, double target, double delta,
                  FindResult* out) const;

  RationalEnumOptions opts_;
  // memo_[k] = value at filtered index k+1; extended lazily under mutex.
  mutable std::vector<std::pair<std::uint64_t, std::uint64_t>> memo_;
  mutable std::mutex memo_mutex_;
};

}  // namespace varlp
