#include "varlp/ode_norm.hpp"

#include <algorithm>
#include <cmath>

#include "varlp/errors.hpp"
#include "varlp/sequence_norms.hpp"

namespace varlp {

namespace {

void check_exponent_cells(const StepFn& p, const PhiOptions& opts) {
  for (double q : p.values()) {
    if (!(q >= 1.0)) throw domain_error("phi: exponent values must be >= 1");
    if (!(q <= opts.p_max)) throw domain_error("phi: exponent values exceed p_max");
  }
}

}  // namespace

PhiSolution phi_step(const StepFn& f, const StepFn& p, const PhiOptions& opts) {
  check_exponent_cells(p, opts);
  StepFn ff = f.refined(p.breakpoints());
  StepFn pp = p.refined(f.breakpoints());
  const auto& grid = ff.breakpoints();
  PhiSolution sol;
  sol.t = grid;
  sol.phi.resize(grid.size());
  sol.phi[0] = 0.0;
  for (std::size_t k = 0; k < ff.cells(); ++k) {
    double c = std::fabs(ff.cell_value(k));
    double q = pp.cell_value(k);
    double dt = grid[k + 1] - grid[k];
    sol.phi[k + 1] = boxplus(sol.phi[k], c * std::pow(dt, 1.0 / q), q);
  }
  return sol;
}

PhiSolution phi_numeric(const SampledFn& f, const SampledFn& p, const PhiOptions& opts) {
  if (f.n != p.n) throw validation_error("phi_numeric: sampling grids must agree");
  return phi_step(f.to_step(), p.to_step(), opts);
}

double lp_norm(const StepFn& f, const StepFn& p, const PhiOptions& opts) {
  return phi_step(f, p, opts).terminal();
}

double classical_lp_norm(const StepFn& f, double p) {
  if (!(p >= 1.0)) throw domain_error("classical_lp_norm: exponent must be >= 1");
  return std::pow(power_integral(f, p, IntervalUnion::unit()), 1.0 / p);
}

double restricted_sup_norm(const StepFn& f, const StepFn& p,
                           const std::vector<IntervalUnion>& sets, const PhiOptions& opts) {
  if (sets.empty()) throw validation_error("restricted_sup_norm: need at least one set");
  for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
    if (!sets[i + 1].contains(sets[i])) {
      throw validation_error("restricted_sup_norm: sets must be increasing");
    }
  }
  double best = 0.0;
  for (const IntervalUnion& C : sets) {
    best = std::max(best, lp_norm(f.restrict_to(C), p, opts));
  }
  return best;
}

}  // namespace varlp
