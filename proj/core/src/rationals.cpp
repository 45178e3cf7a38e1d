#include "varlp/rationals.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <utility>

#include "varlp/errors.hpp"

namespace varlp {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den <= 0 || num <= 0) throw domain_error("Rational: positive numerator/denominator required");
  BigInt g = mp::gcd(num, den);
  num /= g;
  den /= g;
  if (num < den) throw domain_error("Rational: value must be >= 1");
}

double Rational::value() const {
  return mp::cpp_rational(num, den).convert_to<double>();
}

std::string Rational::str() const { return num.str() + "/" + den.str(); }

namespace {

// Exact value of a nonnegative double as num / 2^shift.
struct Dyadic {
  BigInt num;
  BigInt den;  // power of two
};

Dyadic dyadic_of(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw domain_error("expected a finite nonnegative value");
  int e = 0;
  double m = std::frexp(x, &e);
  auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  int shift = e - 53;
  Dyadic d;
  if (shift >= 0) {
    d.num = BigInt(mantissa) << shift;
    d.den = 1;
  } else {
    d.num = mantissa;
    d.den = BigInt(1) << (-shift);
  }
  return d;
}

Dyadic dyadic_sum(double a, double b) {
  Dyadic x = dyadic_of(a);
  Dyadic y = dyadic_of(b);
  if (x.den < y.den) std::swap(x, y);
  // x.den is the finer (larger) power of two.
  Dyadic r;
  r.den = x.den;
  r.num = x.num + y.num * (x.den / y.den);
  return r;
}

// fraction a/b vs bound p/q, exact.
bool frac_geq(const BigInt& a, const BigInt& b, const Dyadic& bound) {
  return a * bound.den >= bound.num * b;
}
bool frac_leq(const BigInt& a, const BigInt& b, const Dyadic& bound) {
  return a * bound.den <= bound.num * b;
}

std::vector<BigInt> cf_coefficients(const Rational& x) {
  std::vector<BigInt> cf;
  BigInt a = x.num, b = x.den;
  while (b != 0) {
    cf.push_back(a / b);
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return cf;  // canonical: last term >= 2 unless the value is an integer
}

Rational cf_eval(const std::vector<BigInt>& cf) {
  BigInt n = cf.back(), d = 1;
  for (auto it = cf.rbegin() + 1; it != cf.rend(); ++it) {
    BigInt nn = *it * n + d;
    d = n;
    n = nn;
  }
  return Rational(n, d);
}

BigInt cf_depth(const std::vector<BigInt>& cf) {
  BigInt s = 0;
  for (const BigInt& c : cf) s += c;
  return s - 1;
}

// Minimal continued-fraction-depth rational in [lo, hi], lo <= hi.
std::pair<BigInt, BigInt> simplest_between(BigInt lo_n, BigInt lo_d, BigInt hi_n, BigInt hi_d) {
  BigInt ceil_lo = (lo_n + lo_d - 1) / lo_d;
  if (ceil_lo * hi_d <= hi_n) return {ceil_lo, 1};
  BigInt fl = lo_n / lo_d;  // == floor(hi) here, no integer in between
  auto inner = simplest_between(hi_d, hi_n - fl * hi_d, lo_d, lo_n - fl * lo_d);
  return {fl * inner.first + inner.second, inner.first};
}

}  // namespace

RationalEnum::RationalEnum(RationalEnumOptions opts) : opts_(opts) {
  memo_.reserve(1024);
  memo_.emplace_back(1, 1);
}

Rational RationalEnum::at(const BigInt& index) const {
  if (index < 1) throw domain_error("RationalEnum: index must be >= 1");
  BigInt m = 2 * index - 1;  // position in the unrestricted Calkin-Wilf walk
  if (static_cast<std::uint64_t>(mp::msb(m)) > opts_.depth_budget) {
    throw budget_error("RationalEnum: index depth exceeds budget");
  }
  std::vector<unsigned char> bits;
  mp::export_bits(m, std::back_inserter(bits), 1);
  // bits are most-significant first; bits[0] is the leading 1.
  BigInt a = 1, b = 1;
  std::size_t i = 1;
  while (i < bits.size()) {
    std::size_t j = i;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    BigInt run = j - i;
    if (bits[i]) {
      a += run * b;
    } else {
      b += run * a;
    }
    i = j;
  }
  return Rational(a, b);
}

BigInt RationalEnum::index_of(const Rational& x) const {
  // Walk from the node to the root; a step toward the parent subtracts the
  // smaller component, and downward-right steps are the 1 bits.
  std::vector<std::pair<bool, BigInt>> runs;  // leaf -> root order
  BigInt a = x.num, b = x.den;
  BigInt total_depth = 0;
  while (!(a == 1 && b == 1)) {
    if (a > b) {
      BigInt q = a / b, r = a % b;
      if (r == 0) {
        runs.emplace_back(true, q - 1);  // b == 1, descend to the root
        total_depth += q - 1;
        a = 1;
      } else {
        runs.emplace_back(true, q);
        total_depth += q;
        a = r;
      }
    } else {
      BigInt q = b / a, r = b % a;
      if (r == 0) {
        runs.emplace_back(false, q - 1);
        total_depth += q - 1;
        b = 1;
      } else {
        runs.emplace_back(false, q);
        total_depth += q;
        b = r;
      }
    }
    if (total_depth > static_cast<std::int64_t>(opts_.depth_budget)) {
      throw budget_error("RationalEnum: value depth exceeds budget");
    }
  }
  BigInt m = 1;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    auto len = it->second.convert_to<std::size_t>();
    m <<= len;
    if (it->first) m |= (BigInt(1) << len) - 1;
  }
  if (m % 2 == 0) throw domain_error("RationalEnum: value below 1 has no index");
  return (m + 1) / 2;
}

std::uint64_t RationalEnum::depth_of_index(const BigInt& index) {
  if (index < 1) throw domain_error("RationalEnum: index must be >= 1");
  if (index == 1) return 0;
  return static_cast<std::uint64_t>(mp::msb(BigInt(index - 1))) + 1;
}

bool RationalEnum::scan_range(std::uint64_t from, std::uint64_t to, double target, double delta,
                              FindResult* out) const {
  Dyadic lo = dyadic_of(target);
  Dyadic hi = dyadic_sum(target, delta);
  double lo_d = target - 1e-9;
  double hi_d = target + delta + 1e-9;
  std::lock_guard<std::mutex> lock(memo_mutex_);
  while (memo_.size() < to) {
    auto [a, b] = memo_.back();
    // Two Newman successor steps x -> 1/(2*floor(x) + 1 - x): odd
    // Calkin-Wilf positions hold exactly the values >= 1, so the filtered
    // walk advances by two raw positions.
    for (int step = 0; step < 2; ++step) {
      std::uint64_t q = a / b;
      std::uint64_t nb = b * (2 * q + 1) - a;
      a = b;
      b = nb;
    }
    memo_.emplace_back(a, b);
  }
  for (std::uint64_t i = from; i <= to; ++i) {
    auto [a, b] = memo_[i - 1];
    double v = static_cast<double>(a) / static_cast<double>(b);
    if (v < lo_d || v > hi_d) continue;
    if (frac_geq(a, b, lo) && frac_leq(a, b, hi)) {
      if (out) *out = {BigInt(i), Rational(a, b)};
      return true;
    }
  }
  return false;
}

FindResult RationalEnum::find_index_above(double target, double delta,
                                          const BigInt& min_index) const {
  if (!(target >= 1.0)) throw domain_error("find_index_above: target must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw domain_error("find_index_above: delta must be positive");
  }
  if (min_index < 0) throw domain_error("find_index_above: min_index must be >= 0");
  if (min_index < opts_.scan_horizon) {
    auto from = min_index.convert_to<std::uint64_t>() + 1;
    FindResult hit;
    if (scan_range(from, opts_.scan_horizon, target, delta, &hit)) return hit;
  }
  // Nothing within the scan horizon: fall back to the analytic search.  Its
  // result is valid and strictly above min_index, though not necessarily the
  // very first such position.
  return locate_above(target, delta, min_index);
}

FindResult RationalEnum::locate_above(double target, double delta,
                                      const BigInt& min_index) const {
  if (!(target >= 1.0)) throw domain_error("locate_above: target must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw domain_error("locate_above: delta must be positive");
  }
  if (min_index < 0) throw domain_error("locate_above: min_index must be >= 0");
  Dyadic lo = dyadic_of(target);
  Dyadic hi = dyadic_sum(target, delta);

  auto in_bracket = [&](const Rational& r) {
    return frac_geq(r.num, r.den, lo) && frac_leq(r.num, r.den, hi);
  };

  auto [sn, sd] = simplest_between(lo.num, lo.den, hi.num, hi.den);
  Rational simplest(sn, sd);
  BigInt idx = index_of(simplest);
  if (idx > min_index) return {idx, simplest};

  // The simplest bracketed value is already enumerated at or before
  // min_index.  Any node strictly deeper than min_index's depth has a larger
  // index, so extend the continued fraction of the simplest value until the
  // extension falls back inside the bracket at sufficient depth.
  std::vector<BigInt> base = cf_coefficients(simplest);
  BigInt need_depth = BigInt(depth_of_index(min_index)) + 1;
  BigInt have_depth = cf_depth(base);
  BigInt x = need_depth - have_depth;
  if (x < 1) x = 1;
  for (int round = 0; round < 128; ++round) {
    if (have_depth + x > static_cast<std::int64_t>(opts_.depth_budget)) {
      throw budget_error("locate_above: bracket requires depth beyond budget");
    }
    // Two depth-(have+x) neighbours of the simplest value, approaching it
    // from opposite sides: [..., ck, x] and [..., ck - 1, 1, x].
    std::vector<BigInt> ext = base;
    ext.push_back(x);
    Rational cand1 = cf_eval(ext);
    if (in_bracket(cand1)) return {index_of(cand1), cand1};
    if (base.back() > 1 || base.size() > 1) {
      std::vector<BigInt> split = base;
      split.back() -= 1;
      if (split.back() == 0) split.pop_back();
      split.push_back(1);
      split.push_back(x);
      Rational cand2 = cf_eval(split);
      if (in_bracket(cand2)) return {index_of(cand2), cand2};
    }
    x *= 2;
  }
  throw budget_error("locate_above: no bracketed value found within depth budget");
}

}  // namespace varlp
