#include "varlp/seminorm.hpp"

#include <algorithm>
#include <cmath>

#include "varlp/errors.hpp"
#include "varlp/sequence_norms.hpp"

namespace varlp {

double simple_seminorm(const StepFn& f, const SeminormSpec& spec) {
  if (spec.blocks.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    const SeminormBlock& blk = spec.blocks[i];
    if (!(blk.inner_p >= 1.0)) throw domain_error("simple_seminorm: inner exponent must be >= 1");
    double v = std::pow(power_integral(f, blk.inner_p, blk.support), 1.0 / blk.inner_p);
    acc = (i == 0) ? v : boxplus(acc, v, blk.connector_q);
  }
  return acc;
}

SeminormSpec variant_nprime(const SeminormSpec& spec) {
  SeminormSpec out = spec;
  for (SeminormBlock& blk : out.blocks) blk.connector_q = blk.inner_p;
  return out;
}

SeminormSpec bracket_spec(const StepFn& p, const IntervalUnion& C,
                          const std::vector<double>& cuts) {
  std::vector<double> windows = cuts;
  windows.push_back(0.0);
  windows.push_back(1.0);
  std::sort(windows.begin(), windows.end());
  windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
  if (windows.front() < 0.0 || windows.back() > 1.0) {
    throw validation_error("bracket_spec: cuts must lie in [0, 1]");
  }
  SeminormSpec spec;
  const auto& pb = p.breakpoints();
  for (std::size_t w = 0; w + 1 < windows.size(); ++w) {
    IntervalUnion piece = C.intersect(Interval{windows[w], windows[w + 1]});
    if (piece.measure() <= 0.0) continue;
    double inf_p = 0.0, sup_p = 0.0;
    bool seen = false;
    for (const Interval& part : piece.parts()) {
      if (part.length() == 0.0) continue;
      for (std::size_t i = 0; i < p.cells(); ++i) {
        double lo = std::max(pb[i], part.lo);
        double hi = std::min(pb[i + 1], part.hi);
        if (lo >= hi) continue;
        double v = p.cell_value(i);
        if (!seen) {
          inf_p = sup_p = v;
          seen = true;
        } else {
          inf_p = std::min(inf_p, v);
          sup_p = std::max(sup_p, v);
        }
      }
    }
    spec.blocks.push_back({piece, inf_p, sup_p});
  }
  return spec;
}

std::optional<double> bracket_gap(double A, double x, double p_lo, double q_hi) {
  if (!(A >= 0.0) || !(x >= 0.0)) throw domain_error("bracket_gap: A, x must be nonnegative");
  if (!(p_lo >= 1.0) || !(q_hi >= p_lo)) {
    throw domain_error("bracket_gap: need 1 <= p_lo <= q_hi");
  }
  if (x == 0.0) return 0.0;
  if (A == 0.0) {
    if (p_lo == 1.0 && q_hi == 1.0) return 0.0;
    return std::nullopt;  // A^(1-q) is singular at the origin
  }
  double rate_q = std::pow(x, q_hi) / q_hi * std::pow(A, 1.0 - q_hi);
  double rate_p = std::pow(x, p_lo) / p_lo * std::pow(A, 1.0 - p_lo);
  return std::fabs(rate_q - rate_p);
}

std::vector<SeminormStage> seminorm_converge(
    const StepFn& f, const StepFn& p,
    const std::vector<std::pair<IntervalUnion, std::vector<double>>>& schedule) {
  std::vector<SeminormStage> out;
  out.reserve(schedule.size());
  for (const auto& [C, cuts] : schedule) {
    SeminormSpec spec = bracket_spec(p, C, cuts);
    SeminormStage stage;
    stage.n_value = simple_seminorm(f, spec);
    stage.nprime_value = simple_seminorm(f, variant_nprime(spec));
    out.push_back(stage);
  }
  return out;
}

}  // namespace varlp
