#pragma once

#include <optional>
#include <vector>

#include "varlp/intervals.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// One block of a simple seminorm: a support set, the exponent used inside
// the block, and the connector joining the block to the running fold.  The
// first block's connector is ignored.
struct SeminormBlock {
  IntervalUnion support;
  double inner_p = 1.0;
  double connector_q = 1.0;
};

struct SeminormSpec {
  std::vector<SeminormBlock> blocks;
};

// v_i = constant-exponent norm of f over block i's support, folded left to
// right through the block connectors.
double simple_seminorm(const StepFn& f, const SeminormSpec& spec);

// Same blocks with every connector replaced by the block's inner exponent.
SeminormSpec variant_nprime(const SeminormSpec& spec);

// Blocks induced by consecutive cut windows intersected with C: inner
// exponent = inf of p on the piece, connector = sup of p on the piece.
// Pieces of zero measure are dropped.
SeminormSpec bracket_spec(const StepFn& p, const IntervalUnion& C,
                          const std::vector<double>& cuts);

// First-order growth mismatch of one fold step when the connector q sits
// above the inner exponent p: with accumulated value A and new mass t * x^q,
// d/dt (A^q + t x^q)^(1/q) at t = 0 equals (x^q / q) A^(1-q), which
// degenerates to the exact growth rate (x^p / p) A^(1-p) as q -> p.  Returns
// the absolute difference of the two rates; nullopt when A = 0 makes the
// rate singular.
std::optional<double> bracket_gap(double A, double x, double p_lo, double q_hi);

struct SeminormStage {
  double n_value = 0.0;       // bracketed connectors
  double nprime_value = 0.0;  // connectors equal to inner exponents
};

// Evaluates the bracket seminorms along a schedule of (C, cuts) stages.
std::vector<SeminormStage> seminorm_converge(
    const StepFn& f, const StepFn& p,
    const std::vector<std::pair<IntervalUnion, std::vector<double>>>& schedule);

}  // namespace varlp
