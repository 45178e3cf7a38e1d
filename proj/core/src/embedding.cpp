#include "varlp/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "varlp/errors.hpp"
#include "varlp/ode_norm.hpp"

namespace varlp {

namespace {

double quasi_target_for(int n) {
  // 1 + 1/(n(n+1)) < (n+1)/n, so a stage meeting this budget meets the
  // (n+1)/n requirement with an n-fold margin.
  return 1.0 + 1.0 / (double(n) * (double(n) + 1.0));
}

// Raising one connector from p to rho in [p, p + delta] inflates a fold by at
// most 2^(1/p - 1/rho) <= 2^(delta / p^2); the product over all connectors is
// below `target` once delta <= log2(target) / sum 1/p_k^2.
double delta_for(double target, const std::vector<double>& exponents) {
  double s = 0.0;
  for (std::size_t k = 1; k < exponents.size(); ++k) {
    s += 1.0 / (exponents[k] * exponents[k]);
  }
  if (s <= 0.0) return 1.0;  // no connectors: any positive slack works
  return std::log2(target) / s;
}

}  // namespace

LadderImage b_map(const StepFn& g, const std::vector<IntervalUnion>& pieces,
                  const std::vector<double>& exponents) {
  if (pieces.size() != exponents.size()) {
    throw validation_error("b_map: pieces and exponents must align");
  }
  LadderImage img;
  img.pieces = pieces;
  img.exponents = exponents;
  img.values.reserve(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].measure() <= 0.0) {
      throw validation_error("b_map: piece of zero measure");
    }
    if (!(exponents[i] >= 1.0) || !std::isfinite(exponents[i])) {
      throw validation_error("b_map: exponent must be finite and >= 1");
    }
    double v = 0.0;
    if (!g.constant_on(pieces[i], &v)) {
      throw validation_error("b_map: function is not constant on a piece");
    }
    img.values.push_back(std::pow(pieces[i].measure(), 1.0 / exponents[i]) * v);
  }
  return img;
}

double image_ladder_norm(const LadderImage& img) {
  if (img.values.empty()) return 0.0;
  if (img.values.size() == 1) return std::abs(img.values[0]);
  ExponentLadder ladder{{img.exponents.begin() + 1, img.exponents.end()}};
  return ladder_norm(img.values, ladder, Nesting::kLeft);
}

std::pair<SparseVector, PlacementRecord> place(const LadderImage& img, const RationalEnum& r,
                                               double delta, const BigInt& start) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw validation_error("place: delta must be positive and finite");
  }
  if (start < 0) {
    throw validation_error("place: start position must be nonnegative");
  }
  PlacementRecord rec;
  rec.delta = delta;
  rec.ladder_value = image_ladder_norm(img);

  std::vector<SparseEntry> entries;
  entries.reserve(img.values.size());
  if (!img.values.empty()) {
    // The first supported coordinate enters the fold against a zero
    // accumulator, so its connector is irrelevant and the next free position
    // suffices.
    BigInt min_index = start;  // lower bound for connector slots, exclusive
    rec.positions.push_back(start + 1);
    entries.push_back({start + 1, img.values[0]});
    for (std::size_t k = 1; k < img.values.size(); ++k) {
      FindResult loc = r.find_index_above(img.exponents[k], delta, min_index);
      BigInt pos = loc.index + 1;  // the connector before `pos` is r(loc.index)
      rec.positions.push_back(pos);
      rec.connectors.push_back(loc.value);
      entries.push_back({pos, img.values[k]});
      min_index = loc.index;
    }
  }
  SparseVector sv{std::move(entries)};
  rec.sparse_value = sparse_norm(sv, r, Nesting::kLeft);
  rec.ratio = rec.sparse_value > 0.0 ? rec.ladder_value / rec.sparse_value : 1.0;
  return {std::move(sv), std::move(rec)};
}

std::pair<StageState, SparseVector> build_stage(const StepFn& f, const StepFn& p, int n,
                                                const EmbedConfig& config,
                                                const RationalEnum& r) {
  if (n < 1) throw validation_error("build_stage: stage index must be >= 1");
  if (config.max_partition_generation < 0) {
    throw validation_error("build_stage: partition generation cap must be >= 0");
  }

  StageState st;
  st.n = n;
  st.alpha = config.truncation.level(n);
  st.partition_generation = std::min(n, config.max_partition_generation);

  IntervalUnion c = lusin_sets(p, n).back();
  st.lusin_measure = c.measure();

  StepFn tf = truncate(f, st.alpha);

  // Seeding the partition with every breakpoint in sight keeps the
  // conditional expectation and the exponent brackets exact for step data:
  // each surviving piece lies inside one cell of f, p, and C alike.
  std::vector<double> seeds;
  auto add_interior = [&seeds](const std::vector<double>& xs) {
    for (double x : xs) {
      if (x > 0.0 && x < 1.0) seeds.push_back(x);
    }
  };
  add_interior(f.breakpoints());
  add_interior(p.breakpoints());
  add_interior(c.endpoints());
  add_interior(config.extra_seeds);
  FinitePartition part = refine_partition(seeds, st.partition_generation);

  StepFn g = cond_expect(tf, c, part);

  SeminormSpec spec = bracket_spec(p, c, part.cuts);
  st.atom_count = int(part.atom_count());
  st.piece_count = int(spec.blocks.size());

  std::vector<IntervalUnion> pieces;
  std::vector<double> exps;
  pieces.reserve(spec.blocks.size());
  exps.reserve(spec.blocks.size());
  for (const SeminormBlock& b : spec.blocks) {
    pieces.push_back(b.support);
    exps.push_back(b.inner_p);
  }

  LadderImage img = b_map(g, pieces, exps);

  st.quasi_target = quasi_target_for(std::max(n, config.quasi_horizon));
  double delta = delta_for(st.quasi_target, exps);
  auto [sv, rec] = place(img, r, delta, BigInt(0));

  st.spec = std::move(spec);
  st.stage_norm = rec.sparse_value;
  st.quasi_ratio = rec.ratio;
  st.placement = std::move(rec);
  st.restricted_norm = lp_norm(tf.restrict_to(c), p);
  st.full_norm = lp_norm(f, p);
  return {std::move(st), std::move(sv)};
}

double UltrapowerElement::cauchy_width() const {
  if (norms.empty()) return 0.0;
  std::size_t w = std::min<std::size_t>(std::size_t(std::max(window, 1)), norms.size());
  auto [mn, mx] = std::minmax_element(norms.end() - std::ptrdiff_t(w), norms.end());
  return *mx - *mn;
}

EmbedResult embed(const StepFn& f, const StepFn& p, int stages, const EmbedConfig& config,
                  const RationalEnum& r) {
  if (stages < 1) throw validation_error("embed: need at least one stage");
  if (config.window < 1) throw validation_error("embed: window must be >= 1");
  EmbedResult res;
  res.element.window = config.window;
  res.element.stages.reserve(std::size_t(stages));
  res.element.norms.reserve(std::size_t(stages));
  res.trace.reserve(std::size_t(stages));
  for (int n = 1; n <= stages; ++n) {
    auto [st, sv] = build_stage(f, p, n, config, r);
    res.element.stages.push_back(std::move(sv));
    res.element.norms.push_back(st.stage_norm);
    res.trace.push_back(std::move(st));
  }
  return res;
}

std::pair<double, double> up_norm(const UltrapowerElement& u) {
  if (u.window < 1) throw validation_error("up_norm: window must be >= 1");
  if (u.norms.size() < std::size_t(u.window)) {
    throw validation_error("up_norm: window exceeds recorded stage count");
  }
  return {u.norms.back(), u.cauchy_width()};
}

UltrapowerElement up_abs(const UltrapowerElement& u) {
  UltrapowerElement out;
  out.window = u.window;
  out.norms = u.norms;  // the fold sees magnitudes only, so norms are unchanged
  out.stages.reserve(u.stages.size());
  for (const SparseVector& sv : u.stages) out.stages.push_back(sv.abs());
  return out;
}

bool up_leq(const UltrapowerElement& u, const UltrapowerElement& v, const RationalEnum& r,
            double tol) {
  if (!(tol >= 0.0)) throw validation_error("up_leq: tolerance must be nonnegative");
  if (u.stages.empty() || v.stages.empty()) {
    throw validation_error("up_leq: elements need at least one stage");
  }
  std::size_t len = std::max(u.stages.size(), v.stages.size());
  std::size_t window = std::size_t(std::max({u.window, v.window, 1}));
  std::size_t first = len > window ? len - window : 0;
  // The positivity defect of a convergent representative is itself
  // convergent, so the operational test is its terminal value: the smallest
  // defect over the final window must sit inside the tolerance plus the
  // elements' own Cauchy slack (shorter elements repeat their last stage).
  double allowance = tol + std::max(u.cauchy_width(), v.cauchy_width());
  double terminal = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < len; ++i) {
    const SparseVector& a = u.stages[std::min(i, u.stages.size() - 1)];
    const SparseVector& b = v.stages[std::min(i, v.stages.size() - 1)];
    SparseVector w = SparseVector::subtract(b, a);
    SparseVector neg = SparseVector::subtract(w.abs(), w);  // |w| - w
    terminal = std::min(terminal, sparse_norm(neg, r, Nesting::kLeft));
  }
  return terminal <= allowance;
}

DoubleEmbedResult double_embed(const VarMatrix& m, const std::vector<double>& outer_q,
                               const std::vector<double>& inner_s, int k,
                               const RationalEnum& r) {
  if (k < 1) throw validation_error("double_embed: block size must be >= 1");
  if (outer_q.size() + 1 < std::size_t(k)) {
    throw validation_error("double_embed: outer connector list too short");
  }
  if (inner_s.size() + 1 < std::size_t(k)) {
    throw validation_error("double_embed: inner connector list too short");
  }
  auto check_exponents = [k](const std::vector<double>& xs, const char* what) {
    for (int i = 0; i + 1 < k; ++i) {
      if (!(xs[std::size_t(i)] >= 1.0) || !std::isfinite(xs[std::size_t(i)])) {
        throw validation_error(std::string("double_embed: ") + what +
                               " exponents must be finite and >= 1");
      }
    }
  };
  check_exponents(outer_q, "outer");
  check_exponents(inner_s, "inner");

  // Leading k x k block; absent entries are zero.
  std::vector<std::vector<double>> block(std::size_t(k), std::vector<double>(std::size_t(k), 0.0));
  for (std::size_t i = 0; i < block.size() && i < m.rows.size(); ++i) {
    for (std::size_t j = 0; j < block[i].size() && j < m.rows[i].size(); ++j) {
      block[i][j] = m.rows[i][j];
    }
  }

  DoubleEmbedResult res;
  res.k = k;
  res.bound = (double(k) + 1.0) / double(k);

  std::vector<double> outer(outer_q.begin(), outer_q.begin() + (k - 1));
  std::vector<double> inner(inner_s.begin(), inner_s.begin() + (k - 1));
  res.exact_norm = double_norm(VarMatrix{block}, outer, inner, Nesting::kLeft);

  // Lowering one connector from q to rho in [q - delta, q] (rho >= 1)
  // inflates a fold by at most 2^(1/rho - 1/q) <= 2^(delta / q); one shared
  // budget across both axes keeps the product below (k+1)/k.
  double s = 0.0;
  for (double e : inner) s += 1.0 / e;
  for (double e : outer) s += 1.0 / e;
  res.delta = s > 0.0 ? std::log2(res.bound) / s : 1.0;

  auto place_axis = [&](const std::vector<double>& exps) {
    AxisPlacement axis;
    axis.positions.push_back(1);
    BigInt min_index = 0;
    for (double e : exps) {
      FindResult loc;
      if (e == 1.0) {
        // Only one enumeration slot holds the value 1, so a unit connector
        // can be bracketed from below at most once per axis.
        if (min_index >= 1) {
          throw budget_error(
              "double_embed: a second unit connector on one axis cannot be "
              "bracketed from below (the enumeration holds 1 exactly once)");
        }
        loc = FindResult{BigInt(1), Rational(1, 1)};
      } else {
        double lo = std::max(1.0, e - res.delta);
        loc = r.find_index_above(lo, e - lo, min_index);
      }
      axis.positions.push_back(loc.index + 1);
      axis.connectors.push_back(loc.value);
      min_index = loc.index;
    }
    return axis;
  };
  res.cols = place_axis(inner);
  res.rows = place_axis(outer);

  // Row folds through the placed inner connectors, then the fold of row
  // norms through the placed outer connectors.
  std::vector<double> row_norms(std::size_t(k), 0.0);
  for (int i = 0; i < k; ++i) {
    std::vector<SparseEntry> entries;
    entries.reserve(std::size_t(k));
    double acc = std::abs(block[std::size_t(i)][0]);
    entries.push_back({res.cols.positions[0], block[std::size_t(i)][0]});
    for (int j = 1; j < k; ++j) {
      acc = boxplus(acc, std::abs(block[std::size_t(i)][std::size_t(j)]),
                    res.cols.connectors[std::size_t(j - 1)].value());
      entries.push_back({res.cols.positions[std::size_t(j)], block[std::size_t(i)][std::size_t(j)]});
    }
    row_norms[std::size_t(i)] = acc;
    res.placed.emplace_back(std::move(entries));
  }
  double acc = row_norms[0];
  for (int i = 1; i < k; ++i) {
    acc = boxplus(acc, row_norms[std::size_t(i)], res.rows.connectors[std::size_t(i - 1)].value());
  }
  res.embedded_norm = acc;
  res.ratio = res.exact_norm > 0.0 ? res.embedded_norm / res.exact_norm : 1.0;
  return res;
}

}  // namespace varlp
