#include "varlp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <random>
#include <sstream>
#include <utility>

#include "varlp/errors.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/sequence_norms.hpp"

namespace varlp {

namespace {

// Uniform in [2^-53, 1] from the top 53 bits, then Box-Muller.  Avoids
// std::normal_distribution, whose output is implementation-defined; this way
// a seed pins down the sample stream exactly.
double uniform01(std::mt19937_64& rng) {
  return double((rng() >> 11) + 1) * 0x1p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double ratio_of(const NormPair& norms, const std::vector<double>& a) {
  double d = norms.domain(a);
  if (!(d > 0.0) || !std::isfinite(d)) return -1.0;  // unusable direction
  return norms.image(a) / d;
}

void check_homogeneous(const std::function<double(const std::vector<double>&)>& norm,
                       const std::vector<double>& probe, const char* what) {
  double base = norm(probe);
  std::vector<double> doubled(probe);
  for (double& x : doubled) x *= 2.0;
  double scaled = norm(doubled);
  if (!(std::abs(scaled - 2.0 * base) <= 1e-9 * std::max(1.0, std::abs(scaled)))) {
    throw validation_error(std::string("distortion_estimate: ") + what +
                           " callback is not 1-homogeneous");
  }
}

// Coordinate-wise hill climbing on the ratio, from `a`, in the direction
// sign (+1 maximizes, -1 minimizes); the step length halves after each full
// sweep of the coordinates.
void ascend(const NormPair& norms, std::vector<double>& a, double& best, int iters, int sign) {
  if (a.empty()) return;
  double rms = 0.0;
  for (double x : a) rms += x * x;
  rms = std::sqrt(rms / double(a.size()));
  if (rms <= 0.0) rms = 1.0;
  double h = 0.5;
  for (int iter = 0; iter < iters; ++iter) {
    std::size_t i = std::size_t(iter) % a.size();
    double scale = std::max(std::abs(a[i]), 0.1 * rms);
    for (double dir : {1.0, -1.0}) {
      std::vector<double> b(a);
      b[i] += dir * h * scale;
      double q = ratio_of(norms, b);
      if (q >= 0.0 && sign * (q - best) > 0.0) {
        best = q;
        a = std::move(b);
      }
    }
    if (i + 1 == a.size()) h *= 0.5;
  }
}

double fold_left(const std::vector<double>& values, const std::vector<double>& connectors) {
  double acc = std::abs(values.empty() ? 0.0 : values[0]);
  for (std::size_t k = 1; k < values.size(); ++k) {
    acc = boxplus(acc, std::abs(values[k]), connectors[k - 1]);
  }
  return acc;
}

}  // namespace

DistortionEstimate distortion_estimate(const NormPair& norms, int dim,
                                       const DistortionOptions& opts) {
  if (dim < 1) throw validation_error("distortion_estimate: dimension must be >= 1");
  if (dim > 6) throw validation_error("distortion_estimate: dimension is limited to 6");
  if (opts.samples < 1) throw validation_error("distortion_estimate: need at least one sample");
  if (opts.refine_iters < 0) {
    throw validation_error("distortion_estimate: refine_iters must be >= 0");
  }
  if (!norms.domain || !norms.image) {
    throw validation_error("distortion_estimate: both norm callbacks are required");
  }

  std::mt19937_64 rng(opts.seed);

  std::vector<std::vector<double>> probes;
  // Deterministic coverage first: the axes and the diagonal.
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[std::size_t(i)] = 1.0;
    probes.push_back(std::move(e));
  }
  probes.emplace_back(static_cast<std::size_t>(dim), 1.0);
  for (int s = 0; s < opts.samples; ++s) {
    std::vector<double> g(static_cast<std::size_t>(dim));
    for (double& x : g) x = gaussian(rng);
    probes.push_back(std::move(g));
  }

  check_homogeneous(norms.domain, probes.back(), "domain");
  check_homogeneous(norms.image, probes.back(), "image");

  DistortionEstimate est;
  double max_ratio = -1.0;
  double min_ratio = -1.0;
  std::vector<double> arg_max;
  std::vector<double> arg_min;
  for (const std::vector<double>& a : probes) {
    double q = ratio_of(norms, a);
    if (q < 0.0) continue;
    ++est.samples_used;
    if (max_ratio < 0.0 || q > max_ratio) {
      max_ratio = q;
      arg_max = a;
    }
    if (min_ratio < 0.0 || q < min_ratio) {
      min_ratio = q;
      arg_min = a;
    }
  }
  if (est.samples_used == 0) {
    throw domain_error("distortion_estimate: no usable directions (domain norm vanished)");
  }

  ascend(norms, arg_max, max_ratio, opts.refine_iters, +1);
  ascend(norms, arg_min, min_ratio, opts.refine_iters, -1);

  if (min_ratio <= opts.degenerate_ratio * max_ratio) {
    throw domain_error("distortion_estimate: map is degenerate (smallest ratio collapsed)");
  }
  est.norm_t = max_ratio;
  est.norm_tinv = 1.0 / min_ratio;
  est.distortion = est.norm_t * est.norm_tinv;
  return est;
}

namespace {

// The certified map, rebuilt from its ingredients: domain evaluates the
// genuine function-space norm of sum c_i f_i, image folds sum c_i x_n(f_i)
// through the placed connectors.  Sharing every breakpoint across the basis
// makes all stage embeddings land on identical positions, so the image side
// reduces to a value matrix over one common support.
struct StageMap {
  StepFn p;
  std::vector<double> common_breaks;
  std::vector<std::vector<double>> basis_cells;  // per basis fn, per cell
  std::vector<std::vector<double>> image_values; // per basis fn, per coordinate
  std::vector<double> placed_connectors;
  PlacementRecord placement;

  StageMap(const std::vector<StepFn>& basis, const StepFn& p_in, int stage,
           const EmbedConfig& config, const RationalEnum& r)
      : p(p_in) {
    EmbedConfig shared = config;
    for (const StepFn& f : basis) {
      for (double b : f.breakpoints()) {
        if (b > 0.0 && b < 1.0) shared.extra_seeds.push_back(b);
      }
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto [st, sv] = build_stage(basis[i], p, stage, shared, r);
      if (i == 0) {
        placement = st.placement;
        for (const Rational& rho : placement.connectors) {
          placed_connectors.push_back(rho.value());
        }
      } else if (st.placement.positions != placement.positions) {
        throw domain_error("finite_repr_certificate: stage placements failed to align");
      }
      std::vector<double> vals;
      vals.reserve(sv.entries().size());
      for (const SparseEntry& e : sv.entries()) vals.push_back(e.value);
      image_values.push_back(std::move(vals));
    }

    // Common refinement grid for the domain combinations, including p's
    // breakpoints so the norm evaluation needs no further refinement.
    StepFn acc = StepFn::constant(0.0);
    for (const StepFn& f : basis) {
      acc = StepFn::combine(acc, f, [](double a, double) { return a; });
    }
    acc = StepFn::combine(acc, p, [](double a, double) { return a; });
    common_breaks = acc.breakpoints();
    for (const StepFn& f : basis) {
      std::vector<double> cells;
      cells.reserve(common_breaks.size() - 1);
      for (std::size_t c = 0; c + 1 < common_breaks.size(); ++c) {
        cells.push_back(f.value_at(0.5 * (common_breaks[c] + common_breaks[c + 1])));
      }
      basis_cells.push_back(std::move(cells));
    }
  }

  NormPair norms() const {
    const StageMap& self = *this;
    NormPair pair;
    pair.domain = [&self](const std::vector<double>& c) {
      std::vector<double> cells(self.common_breaks.size() - 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
          cells[j] += c[i] * self.basis_cells[i][j];
        }
      }
      return lp_norm(StepFn(self.common_breaks, cells), self.p);
    };
    pair.image = [&self](const std::vector<double>& c) {
      std::vector<double> values(self.image_values.empty() ? 0 : self.image_values[0].size(),
                                 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
          values[j] += c[i] * self.image_values[i][j];
        }
      }
      return fold_left(values, self.placed_connectors);
    };
    return pair;
  }
};

void validate_basis(const std::vector<StepFn>& basis) {
  if (basis.empty()) throw validation_error("finite_repr_certificate: empty basis");
  if (basis.size() > 4) {
    throw validation_error("finite_repr_certificate: basis dimension is limited to 4");
  }
}

}  // namespace

EmbeddingCertificate finite_repr_certificate(const std::vector<StepFn>& basis, const StepFn& p,
                                             const CertifyOptions& opts,
                                             const EmbedConfig& config, const RationalEnum& r,
                                             std::vector<double>* trace_out) {
  validate_basis(basis);
  if (!(opts.eps > 0.0)) throw validation_error("finite_repr_certificate: eps must be positive");
  if (opts.max_stages < 1) {
    throw validation_error("finite_repr_certificate: stage budget must be >= 1");
  }
  if (trace_out) trace_out->clear();

  double last_distortion = -1.0;
  for (int n = 1; n <= opts.max_stages; ++n) {
    StageMap map(basis, p, n, config, r);
    NormPair pair = map.norms();
    DistortionEstimate est = distortion_estimate(pair, int(basis.size()), opts.distortion);
    last_distortion = est.distortion;
    if (trace_out) trace_out->push_back(est.distortion);
    if (est.distortion <= 1.0 + opts.eps) {
      DistortionOptions tenfold = opts.distortion;
      tenfold.samples *= 10;
      DistortionEstimate recheck = distortion_estimate(pair, int(basis.size()), tenfold);
      if (recheck.distortion <= 1.0 + opts.eps + 1e-2) {
        EmbeddingCertificate cert;
        cert.scheme = std::string(RationalEnum::scheme_id());
        cert.stage = n;
        cert.dimension = int(basis.size());
        cert.eps = opts.eps;
        cert.delta = map.placement.delta;
        cert.seed = opts.distortion.seed;
        cert.samples = opts.distortion.samples;
        cert.refine_iters = opts.distortion.refine_iters;
        cert.norm_t = est.norm_t;
        cert.norm_tinv = est.norm_tinv;
        cert.distortion = est.distortion;
        cert.recheck_distortion = recheck.distortion;
        cert.verified = true;
        cert.basis = basis;
        cert.p = p;
        cert.partition_cap = config.max_partition_generation;
        cert.truncation_scale = config.truncation.scale;
        for (const BigInt& pos : map.placement.positions) cert.positions.push_back(pos.str());
        for (const Rational& rho : map.placement.connectors) {
          cert.connectors.push_back(rho.str());
        }
        return cert;
      }
    }
  }
  std::ostringstream msg;
  msg << "finite_repr_certificate: stage budget exhausted after " << opts.max_stages
      << " stages; last measured distortion " << last_distortion << " vs target "
      << (1.0 + opts.eps);
  throw budget_error(msg.str());
}

NormPair certificate_norm_pair(const EmbeddingCertificate& cert, const RationalEnum& r) {
  validate_basis(cert.basis);
  if (cert.dimension != int(cert.basis.size())) {
    throw domain_error("certificate: recorded dimension does not match the basis");
  }
  EmbedConfig config;
  config.max_partition_generation = cert.partition_cap;
  config.truncation.scale = cert.truncation_scale;
  auto map = std::make_shared<StageMap>(cert.basis, cert.p, cert.stage, config, r);

  // The rebuilt placement must reproduce the certificate exactly.
  if (map->placement.positions.size() != cert.positions.size() ||
      map->placement.connectors.size() != cert.connectors.size()) {
    throw domain_error("certificate: recorded placement has the wrong shape");
  }
  for (std::size_t k = 0; k < cert.positions.size(); ++k) {
    if (map->placement.positions[k].str() != cert.positions[k]) {
      throw domain_error("certificate: position " + cert.positions[k] +
                         " does not match the rebuilt stage map");
    }
  }
  for (std::size_t k = 0; k < cert.connectors.size(); ++k) {
    if (map->placement.connectors[k].str() != cert.connectors[k]) {
      throw domain_error("certificate: connector '" + cert.connectors[k] +
                         "' does not match the rebuilt stage map");
    }
    // Independent decode: the connector must also be the enumeration's value
    // at the slot before its position.
    BigInt pos(cert.positions[k + 1]);
    if (r.at(pos - 1).str() != cert.connectors[k]) {
      throw domain_error("certificate: connector '" + cert.connectors[k] +
                         "' does not decode from position " + cert.positions[k + 1]);
    }
  }

  NormPair inner = map->norms();
  NormPair pair;
  pair.domain = [map, inner](const std::vector<double>& c) { return inner.domain(c); };
  pair.image = [map, inner](const std::vector<double>& c) { return inner.image(c); };
  return pair;
}

DistortionEstimate reverify(const EmbeddingCertificate& cert, const RationalEnum& r) {
  if (cert.scheme != RationalEnum::scheme_id()) {
    throw domain_error("certificate: unknown enumeration scheme '" + cert.scheme + "'");
  }
  NormPair pair = certificate_norm_pair(cert, r);
  DistortionOptions opts;
  opts.seed = cert.seed;
  opts.samples = cert.samples * 10;
  opts.refine_iters = cert.refine_iters;
  return distortion_estimate(pair, cert.dimension, opts);
}

}  // namespace varlp
