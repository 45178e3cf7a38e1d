#pragma once

#include <utility>
#include <vector>

#include "varlp/approximation.hpp"
#include "varlp/intervals.hpp"
#include "varlp/rationals.hpp"
#include "varlp/seminorm.hpp"
#include "varlp/sequence_norms.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// Image of a block-constant function under the block map: coordinate i holds
// m(piece_i)^(1/p_i) times the value on piece i, and the coordinates are
// joined by the ladder of exponents p_2, ..., p_j.
struct LadderImage {
  std::vector<double> values;
  std::vector<double> exponents;      // p_i per coordinate
  std::vector<IntervalUnion> pieces;  // successive supports
};

LadderImage b_map(const StepFn& g, const std::vector<IntervalUnion>& pieces,
                  const std::vector<double>& exponents);

// Fold of the image values through its own connectors p_2..p_j.
double image_ladder_norm(const LadderImage& img);

struct PlacementRecord {
  std::vector<BigInt> positions;     // strictly increasing coordinate indices
  std::vector<Rational> connectors;  // chosen rationals r(position - 1), one per coordinate >= 2
  double delta = 0.0;
  double ladder_value = 0.0;  // exact-exponent fold
  double sparse_value = 0.0;  // placed fold
  double ratio = 1.0;         // ladder / sparse, >= 1
};

// Realizes the image inside the enumerated sequence space: coordinate k goes
// to a position whose preceding connector is a rational in
// [p_k, p_k + delta], positions strictly increasing from `start`.  Larger
// connectors only shrink the fold, so sparse <= ladder holds by
// construction, and the worst-case inflation is 2^(sum (1/p_k - 1/rho_k)).
std::pair<SparseVector, PlacementRecord> place(const LadderImage& img, const RationalEnum& r,
                                               double delta, const BigInt& start);

struct EmbedConfig {
  // Dyadic partition generation is min(n, this); breakpoint seeds keep the
  // conditional expectations exact for step data regardless of the cap.
  int max_partition_generation = 6;
  TruncationSchedule truncation{};
  // Extra cut points forced into every stage partition (used to align the
  // stage maps of several functions so they share one linear placement).
  std::vector<double> extra_seeds;
  int window = 5;  // Cauchy window width for limit readings
  // Placement slack is budgeted for stage max(n, quasi_horizon).  Freezing
  // the budget until the horizon keeps the connector searches identical from
  // stage to stage once the piece structure stabilizes, so the trailing
  // norm trace moves only through the monotone ingredients (truncation
  // level and Lusin measure) and the gap to the true norm cannot jitter
  // upward.  Stages beyond the horizon tighten as 1 + 1/(n(n+1)).
  int quasi_horizon = 30;
};

struct StageState {
  int n = 0;
  double alpha = 0.0;
  int partition_generation = 0;
  double lusin_measure = 0.0;
  int atom_count = 0;   // partition atoms
  int piece_count = 0;  // surviving pieces (atoms meeting the Lusin set)
  SeminormSpec spec;    // exact per-piece exponents (inner = connector)
  PlacementRecord placement;
  double stage_norm = 0.0;       // norm of the placed vector
  double restricted_norm = 0.0;  // norm of the truncated function on the Lusin set
  double full_norm = 0.0;        // norm of f itself
  double quasi_ratio = 1.0;      // measured ladder / sparse
  double quasi_target = 1.0;     // designed bound; always <= (n+1)/n
};

std::pair<StageState, SparseVector> build_stage(const StepFn& f, const StepFn& p, int n,
                                                const EmbedConfig& config,
                                                const RationalEnum& r);

// Stage sequence standing in for an ultrapower representative: the limit
// readings below use the final Cauchy window instead of a free ultrafilter.
struct UltrapowerElement {
  std::vector<SparseVector> stages;
  std::vector<double> norms;
  int window = 5;

  double cauchy_width() const;
};

struct EmbedResult {
  UltrapowerElement element;
  std::vector<StageState> trace;
};

EmbedResult embed(const StepFn& f, const StepFn& p, int stages, const EmbedConfig& config,
                  const RationalEnum& r);

// (limit reading, width of the final Cauchy window).
std::pair<double, double> up_norm(const UltrapowerElement& u);

// Stagewise absolute value.
UltrapowerElement up_abs(const UltrapowerElement& u);

// Positive-cone order test: v - u counts as nonnegative when
// || |w_n| - w_n || stays below tol plus the recorded Cauchy widths over the
// final window.  Shorter elements are padded by repeating their last stage.
bool up_leq(const UltrapowerElement& u, const UltrapowerElement& v, const RationalEnum& r,
            double tol = 1e-6);

struct AxisPlacement {
  std::vector<BigInt> positions;
  std::vector<Rational> connectors;
};

struct DoubleEmbedResult {
  int k = 0;
  double exact_norm = 0.0;     // two-phase norm of the truncated block
  double embedded_norm = 0.0;  // norm after placement of rows and columns
  double ratio = 1.0;          // embedded / exact, in [1, (k+1)/k]
  double bound = 1.0;          // (k+1)/k
  double delta = 0.0;
  AxisPlacement rows;
  AxisPlacement cols;
  std::vector<SparseVector> placed;  // the k placed rows, entries at column positions
};

// Truncates the matrix to its leading k x k block and realizes it inside the
// doubly indexed enumerated space.  Connectors are chosen just *below* their
// targets -- inner within [s - delta, s], outer within [q - delta, q] -- so
// the placed norm can only grow: exact <= embedded <= (k+1)/k * exact.  A
// target exactly at the lattice floor (exponent 1) can only be bracketed
// from below by the single enumeration slot holding 1 itself; each axis may
// use that slot once, and a second unit connector raises budget_error.
DoubleEmbedResult double_embed(const VarMatrix& m, const std::vector<double>& outer_q,
                               const std::vector<double>& inner_s, int k, const RationalEnum& r);

}  // namespace varlp
