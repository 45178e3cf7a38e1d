#pragma once

#include <vector>

#include "varlp/intervals.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// Accumulated solution phi of
//   phi(0) = 0,  phi'(t) = (|f(t)|^p(t) / p(t)) * phi(t)^(1 - p(t)),
// whose terminal value phi(1) is the variable-exponent norm of f.  On cells
// where f and p are constant the equation integrates in closed form:
//   phi(t_k)^(p_k) = phi(t_{k-1})^(p_k) + |c_k|^(p_k) * dt,
// which is a boxplus step and handles the singular start phi = 0 exactly.
struct PhiSolution {
  std::vector<double> t;    // grid, t.front() = 0, t.back() = 1
  std::vector<double> phi;  // nondecreasing, phi.front() = 0
  double terminal() const { return phi.back(); }
};

struct PhiOptions {
  double p_max = 64.0;  // exponents above this are rejected
};

// Exact propagation on the common refinement of the f and p grids.
PhiSolution phi_step(const StepFn& f, const StepFn& p, const PhiOptions& opts = {});

// Midpoint-sampled variant: both functions are replaced by their sampling
// staircases with uniform cell width h = 1/n, then propagated exactly.
PhiSolution phi_numeric(const SampledFn& f, const SampledFn& p, const PhiOptions& opts = {});

double lp_norm(const StepFn& f, const StepFn& p, const PhiOptions& opts = {});

// (sum |c_i|^p len_i)^(1/p): the constant-exponent norm.
double classical_lp_norm(const StepFn& f, double p);

// max_n of the norm of f * 1_{C_n} over an increasing family of sets.
double restricted_sup_norm(const StepFn& f, const StepFn& p,
                           const std::vector<IntervalUnion>& sets,
                           const PhiOptions& opts = {});

}  // namespace varlp
