#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "varlp/embedding.hpp"
#include "varlp/rationals.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// A linear map presented through its two norms on coefficient space: the
// domain norm of a coefficient vector and the norm of its image.  Both
// callbacks must be positively 1-homogeneous.
struct NormPair {
  std::function<double(const std::vector<double>&)> domain;
  std::function<double(const std::vector<double>&)> image;
};

struct DistortionOptions {
  std::uint64_t seed = 1;
  int samples = 10000;     // random directions per estimate
  int refine_iters = 100;  // coordinate-ascent steps from each extreme
  double degenerate_ratio = 1e-12;
};

struct DistortionEstimate {
  double norm_t = 0.0;     // largest observed ||T a|| / ||a||
  double norm_tinv = 0.0;  // reciprocal of the smallest observed ratio
  double distortion = 1.0;
  int samples_used = 0;
};

// Monte Carlo + coordinate-ascent estimate of the distortion of the map
// (dim <= 6): samples Gaussian directions normalized on the domain unit
// sphere, records image norms, then refines both extremes.  The reported
// operator norms are lower bounds, hence so is the distortion.
// Deterministic for a fixed seed (the Gaussian sampler is built directly on
// the raw generator bits).  Throws domain_error when the smallest ratio
// collapses relative to the largest (rank-deficient map), validation_error
// when a callback is visibly non-homogeneous.
DistortionEstimate distortion_estimate(const NormPair& norms, int dim,
                                       const DistortionOptions& opts);

// Everything needed to rebuild and re-check the certified stage map: the
// basis and exponent functions reconstruct the domain norm, the stage /
// schedule parameters reconstruct the stage embedding of each basis element,
// and positions + connectors pin down the placed image.
struct EmbeddingCertificate {
  std::string scheme;  // enumeration scheme identifier
  int stage = 0;
  int dimension = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 1;
  int samples = 0;
  int refine_iters = 0;
  double norm_t = 0.0;
  double norm_tinv = 0.0;
  double distortion = 1.0;
  double recheck_distortion = 1.0;
  bool verified = false;
  std::vector<StepFn> basis;
  StepFn p = StepFn::constant(1.0);
  int partition_cap = 0;        // stage-schedule knobs used to build the map
  double truncation_scale = 1.0;
  std::vector<std::string> positions;   // decimal indices, one per coordinate
  std::vector<std::string> connectors;  // "num/den", one per coordinate >= 2
};

struct CertifyOptions {
  double eps = 1e-2;
  int max_stages = 40;  // stage budget
  DistortionOptions distortion{};
};

// Advances the stage construction until the measured distortion between
// c -> ||sum c_i f_i|| and c -> ||sum c_i x_n(f_i)|| drops to 1 + eps and a
// recheck at tenfold samples confirms it within eps + 1e-2.  The basis is
// limited to dimension 4; stage geometry is shared across basis elements by
// seeding every breakpoint, which makes the stage map genuinely linear.
// Throws budget_error when the stage budget runs out first, domain_error
// (via the degeneracy guard) when the basis is linearly dependent.  When
// trace_out is given it receives the measured distortion of every stage
// tried.
EmbeddingCertificate finite_repr_certificate(const std::vector<StepFn>& basis, const StepFn& p,
                                             const CertifyOptions& opts,
                                             const EmbedConfig& config, const RationalEnum& r,
                                             std::vector<double>* trace_out = nullptr);

// Rebuilds the certified stage map from the certificate alone: re-embeds the
// recorded basis at the recorded stage and checks that the resulting
// placement reproduces the recorded positions and connectors (mismatch, or a
// connector that does not decode from its position, throws domain_error).
NormPair certificate_norm_pair(const EmbeddingCertificate& cert, const RationalEnum& r);

// Soundness + reproducibility check of a (possibly re-loaded) certificate:
// validates the scheme identifier, rebuilds the map, and re-runs the
// distortion estimate at the recorded seed with tenfold samples.
DistortionEstimate reverify(const EmbeddingCertificate& cert, const RationalEnum& r);

}  // namespace varlp
