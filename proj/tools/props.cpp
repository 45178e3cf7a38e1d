#include "props.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "varlp/approximation.hpp"
#include "varlp/certify.hpp"
#include "varlp/embedding.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/rationals.hpp"
#include "varlp/seminorm.hpp"
#include "varlp/sequence_norms.hpp"
#include "varlp/step_fn.hpp"

namespace varlp::cli {

namespace {

struct Harness {
  std::ostream& out;
  std::mt19937_64 rng;
  bool all_ok = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      out << "[ok] " << name << "\n";
    } else {
      all_ok = false;
      out << "[FAIL] " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    }
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  StepFn random_step(int cells, double lo, double hi) {
    std::vector<double> breaks{0.0};
    std::vector<double> values;
    std::vector<double> interior;
    for (int i = 0; i + 1 < cells; ++i) interior.push_back(uniform(0.01, 0.99));
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    for (double t : interior) breaks.push_back(t);
    breaks.push_back(1.0);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) values.push_back(uniform(lo, hi));
    return StepFn(breaks, values);
  }
};

void props_boxplus(Harness& h) {
  bool lattice = true, bounds = true, zero = true, infinity = true;
  for (int i = 0; i < 500; ++i) {
    double a = h.uniform(0.0, 10.0);
    double b = h.uniform(0.0, 10.0);
    double p = h.uniform(1.0, 32.0);
    double q = p + h.uniform(0.0, 32.0);
    double vp = boxplus(a, b, p);
    double vq = boxplus(a, b, q);
    if (vq > vp) lattice = false;
    if (vp < std::max(a, b) || vp > a + b + 1e-12 * (a + b)) bounds = false;
    if (boxplus(a, 0.0, p) != a || boxplus(0.0, b, p) != b) zero = false;
    if (boxplus(a, b, std::numeric_limits<double>::infinity()) != std::max(a, b)) {
      infinity = false;
    }
  }
  h.check("boxplus: monotone nonincreasing in the exponent", lattice);
  h.check("boxplus: between max and sum for exponents >= 1", bounds);
  h.check("boxplus: zero operand collapses exactly", zero);
  h.check("boxplus: infinite exponent is the maximum exactly", infinity);
}

void props_ladder(Harness& h) {
  // Inserting a zero coordinate (with any finite connector at the new joint)
  // must not change a left fold.
  bool pad_ok = true, perm_pos = true;
  for (int rep = 0; rep < 100; ++rep) {
    int m = h.pick(1, 8);
    std::vector<double> x, con;
    for (int i = 0; i < m; ++i) x.push_back(h.uniform(-5.0, 5.0));
    for (int i = 0; i + 1 < m; ++i) con.push_back(h.uniform(1.0, 16.0));
    double base = ladder_norm(x, ExponentLadder{con}, Nesting::kLeft);
    std::size_t at = std::size_t(h.pick(1, m));
    std::vector<double> xi = x;
    std::vector<double> ci = con;
    xi.insert(xi.begin() + std::ptrdiff_t(at), 0.0);
    ci.insert(ci.begin() + std::ptrdiff_t(at) - 1, h.uniform(1.0, 16.0));
    double padded = ladder_norm(xi, ExponentLadder{ci}, Nesting::kLeft);
    if (padded != base) pad_ok = false;
    if (base < 0.0) perm_pos = false;
  }
  h.check("ladder_norm: zero padding collapses exactly", pad_ok);
  h.check("ladder_norm: nonnegative", perm_pos);
}

void props_sparse_dense(Harness& h) {
  RationalEnum r;
  bool agree = true;
  for (int rep = 0; rep < 40 && agree; ++rep) {
    int m = h.pick(1, 6);
    std::vector<SparseEntry> entries;
    long long pos = 0;
    for (int i = 0; i < m; ++i) {
      pos += h.pick(1, 30);
      entries.push_back({BigInt(pos), h.uniform(-3.0, 3.0)});
    }
    SparseVector sv{entries};
    std::vector<double> dense;
    std::vector<double> con;
    for (int i = 0; i < m; ++i) {
      dense.push_back(entries[std::size_t(i)].value);
      if (i > 0) con.push_back(r.at(entries[std::size_t(i)].index - 1).value());
    }
    double a = sparse_norm(sv, r, Nesting::kLeft);
    double b = ladder_norm(dense, ExponentLadder{con}, Nesting::kLeft);
    if (a != b) agree = false;
  }
  h.check("sparse_norm: agrees exactly with the dense fold at decoded connectors", agree);
}

void props_ode(Harness& h) {
  bool classical = true, homog = true, monotone = true;
  for (int rep = 0; rep < 30; ++rep) {
    StepFn f = h.random_step(h.pick(1, 6), -4.0, 4.0);
    for (double pc : {1.0, 2.0, 3.7}) {
      StepFn p = StepFn::constant(pc);
      double a = lp_norm(f, p);
      double b = classical_lp_norm(f, pc);
      if (std::fabs(a - b) > 1e-12 * std::max(1.0, b)) classical = false;
    }
    StepFn p = h.random_step(h.pick(1, 4), 1.0, 8.0);
    double base = lp_norm(f, p);
    for (double lam : {-2.0, 0.5}) {
      double scaled = lp_norm(f.map([lam](double v) { return lam * v; }), p);
      if (std::fabs(scaled - std::fabs(lam) * base) > 1e-12 * std::max(1.0, base)) {
        homog = false;
      }
    }
    StepFn fa = f.map([](double v) { return std::fabs(v); });
    StepFn fb = fa.map([&h](double v) { return v + 0.1; });
    (void)h;
    if (lp_norm(fb, p) < lp_norm(fa, p)) monotone = false;
  }
  h.check("lp_norm: constant exponent reproduces the classical norm (1e-12)", classical);
  h.check("lp_norm: absolutely homogeneous (1e-12)", homog);
  h.check("lp_norm: monotone under pointwise domination", monotone);
}

void props_phi(Harness& h) {
  bool shape = true, numeric = true;
  StepFn f = h.random_step(5, -2.0, 2.0);
  StepFn p = h.random_step(3, 1.0, 6.0);
  PhiSolution sol = phi_step(f, p);
  if (sol.phi.front() != 0.0 || sol.t.front() != 0.0 || sol.t.back() != 1.0) shape = false;
  for (std::size_t i = 1; i < sol.phi.size(); ++i) {
    if (sol.phi[i] < sol.phi[i - 1]) shape = false;
  }
  double exact = sol.terminal();
  double prev_err = std::numeric_limits<double>::infinity();
  for (std::size_t n : {256u, 1024u, 4096u}) {
    PhiSolution num = phi_numeric(SampledFn::from_step(f, n), SampledFn::from_step(p, n));
    double err = std::fabs(num.terminal() - exact);
    if (err > prev_err + 1e-12 || err > 0.05) numeric = false;
    prev_err = err;
  }
  h.check("phi_step: phi(0) = 0 and phi nondecreasing on [0,1]", shape);
  h.check("phi_numeric: error shrinks with the sampling grid", numeric);
}

void props_seminorm(Harness& h) {
  // Staircase exponent 1 + t; brackets must stay below the norm and the
  // N/N' ordering must hold at every stage.
  std::vector<double> breaks, values;
  int cells = 16;
  for (int i = 0; i <= cells; ++i) breaks.push_back(double(i) / cells);
  for (int i = 0; i < cells; ++i) values.push_back(1.0 + (double(i) + 0.5) / cells);
  StepFn p(breaks, values);
  StepFn f = h.random_step(6, 0.2, 2.0);
  double lp = lp_norm(f, p);
  std::vector<IntervalUnion> lusin = lusin_sets(p, 8);
  std::vector<std::pair<IntervalUnion, std::vector<double>>> schedule;
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> seeds;
    for (double t : f.breakpoints()) {
      if (t > 0.0 && t < 1.0) seeds.push_back(t);
    }
    for (double t : p.breakpoints()) {
      if (t > 0.0 && t < 1.0) seeds.push_back(t);
    }
    for (double t : lusin[std::size_t(n - 1)].endpoints()) {
      if (t > 0.0 && t < 1.0) seeds.push_back(t);
    }
    schedule.emplace_back(lusin[std::size_t(n - 1)], refine_partition(seeds, n).cuts);
  }
  std::vector<SeminormStage> vals = seminorm_converge(f, p, schedule);
  bool dominated = true, ordered = true;
  for (const SeminormStage& st : vals) {
    if (st.n_value > lp) dominated = false;
    if (st.n_value > st.nprime_value) ordered = false;
  }
  bool shrinks = (lp - vals.back().n_value) <= (lp - vals.front().n_value);
  h.check("seminorm: brackets never exceed the function norm", dominated);
  h.check("seminorm: N <= N' at every stage", ordered);
  h.check("seminorm: terminal gap no larger than the initial gap", shrinks);

  // Splitting a constant-exponent block with its own exponent as connector
  // is an isometry.
  StepFn g = h.random_step(4, -3.0, 3.0);
  SeminormSpec whole{{{IntervalUnion::unit(), 2.0, 2.0}}};
  SeminormSpec split{{{IntervalUnion({{0.0, 0.5}}), 2.0, 2.0},
                      {IntervalUnion({{0.5, 1.0}}), 2.0, 2.0}}};
  double w = simple_seminorm(g, whole);
  double s = simple_seminorm(g, split);
  h.check("seminorm: splitting a constant-exponent block is isometric (1e-12)",
          std::fabs(w - s) <= 1e-12 * std::max(1.0, w));

  bool gap_shrinks = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : {0.2, 0.1, 0.05}) {
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
      for (int j = 1; j <= 10; ++j) {
        auto gap = bracket_gap(double(i) / 10.0, double(j) / 10.0, 2.0, 2.0 + delta);
        if (gap.has_value()) worst = std::max(worst, *gap);
      }
    }
    if (worst > prev) gap_shrinks = false;
    prev = worst;
  }
  auto tight = bracket_gap(0.7, 0.3, 2.0, 2.0);
  h.check("bracket_gap: shrinks uniformly on a grid as the bracket tightens", gap_shrinks);
  h.check("bracket_gap: zero exactly when the bracket is tight",
          tight.has_value() && *tight == 0.0);
}

void props_approx(Harness& h) {
  StepFn p = h.random_step(5, 1.0, 6.0);
  std::vector<IntervalUnion> lusin = lusin_sets(p, 8);
  bool nested = true, growing = true;
  for (std::size_t i = 0; i + 1 < lusin.size(); ++i) {
    if (!lusin[i + 1].contains(lusin[i])) nested = false;
    if (lusin[i + 1].measure() < lusin[i].measure()) growing = false;
  }
  h.check("lusin_sets: nested increasing sets", nested && growing);
  h.check("lusin_sets: measure approaches full measure",
          1.0 - lusin.back().measure() <= std::pow(2.0, -6.0));

  StepFn f = h.random_step(6, -4.0, 4.0);
  FinitePartition part = refine_partition({0.3, 0.7}, 4);
  IntervalUnion c = lusin.back();
  StepFn e1 = cond_expect(f, c, part);
  StepFn e2 = cond_expect(e1, c, part);
  h.check("cond_expect: contraction for the sup norm", e1.max_abs() <= f.max_abs() + 1e-15);
  bool idem = true;
  for (int i = 0; i < 64; ++i) {
    double t = (i + 0.5) / 64.0;
    if (e1.value_at(t) != e2.value_at(t)) idem = false;
  }
  h.check("cond_expect: idempotent on its own partition", idem);

  double alpha = 1.5;
  StepFn tf = truncate(f, alpha);
  h.check("truncate: clamps to the level", tf.max_abs() <= alpha + 1e-15);
  StepFn tf2 = truncate(f, f.max_abs() + 1.0);
  bool noop = true;
  for (int i = 0; i < 64; ++i) {
    double t = (i + 0.5) / 64.0;
    if (tf2.value_at(t) != f.value_at(t)) noop = false;
  }
  h.check("truncate: identity above the range of f", noop);
}

void props_embed(Harness& h) {
  RationalEnum r;
  StepFn f = h.random_step(4, 0.2, 3.0);
  StepFn p = h.random_step(3, 1.2, 4.0);
  EmbedConfig cfg;
  EmbedResult res = embed(f, p, 8, cfg, r);
  bool quasi = true;
  for (const StageState& st : res.trace) {
    if (!(st.quasi_ratio >= 1.0 && st.quasi_ratio <= st.quasi_target)) quasi = false;
  }
  h.check("embed: stagewise quasi ratio inside [1, target] exactly", quasi);

  StepFn g = f.map([](double v) { return v + 0.5; });
  EmbedResult resg = embed(g, p, 8, cfg, r);
  h.check("embed: order preserved in the quotient (f <= g)",
          up_leq(res.element, resg.element, r));

  UltrapowerElement abs1 = up_abs(res.element);
  UltrapowerElement abs2 = up_abs(abs1);
  h.check("up_abs: idempotent", abs1.norms == abs2.norms);

  auto [base_limit, base_width] = up_norm(res.element);
  EmbedResult res2 = embed(f.map([](double v) { return 2.0 * v; }), p, 8, cfg, r);
  auto [two_limit, two_width] = up_norm(res2.element);
  h.check("embed: homogeneity of the limit (1e-6 + stage widths)",
          std::fabs(two_limit - 2.0 * base_limit) <=
              1e-6 + 2.0 * base_width + two_width);

  UltrapowerElement zero;
  UltrapowerElement tiny;
  for (int n = 1; n <= 8; ++n) {
    zero.stages.push_back(SparseVector{{}});
    zero.norms.push_back(0.0);
    SparseVector w{{{BigInt(1), std::pow(2.0, -n)}}};
    tiny.norms.push_back(sparse_norm(w, r, Nesting::kLeft));
    tiny.stages.push_back(std::move(w));
  }
  h.check("up_leq: vanishing elements are equivalent to zero",
          up_leq(zero, tiny, r) && up_leq(tiny, zero, r));
}

void props_double_embed(Harness& h) {
  RationalEnum r;
  VarMatrix m;
  m.rows = {{3.0, 4.0}, {0.0, 12.0}};
  DoubleEmbedResult d = double_embed(m, {2.0}, {2.0}, 2, r);
  h.check("double_embed: exact rational connectors give distortion 1",
          d.embedded_norm == 13.0 && d.ratio == 1.0);

  VarMatrix big;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> row;
    for (int j = 0; j < 4; ++j) row.push_back(h.uniform(-2.0, 2.0));
    big.rows.push_back(row);
  }
  std::vector<double> outer = {1.25, 1.5, 1.75};
  std::vector<double> inner = {1.2, 1.4, 1.6};
  bool bracket = true;
  for (int k = 1; k <= 4; ++k) {
    DoubleEmbedResult dk = double_embed(big, outer, inner, k, r);
    if (!(dk.ratio >= 1.0 && dk.ratio <= dk.bound)) bracket = false;
  }
  h.check("double_embed: two-sided bracket holds exactly for k = 1..4", bracket);
}

void props_certify(Harness& h, std::uint64_t seed) {
  auto l2 = [](const std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
  };
  auto l1 = [](const std::vector<double>& c) {
    double s = 0.0;
    for (double v : c) s += std::fabs(v);
    return s;
  };
  DistortionOptions opts;
  opts.seed = seed;
  opts.samples = 20000;
  opts.refine_iters = 200;

  NormPair ident{l2, l2};
  DistortionEstimate e1 = distortion_estimate(ident, 3, opts);
  h.check("distortion_estimate: identity map measures exactly 1",
          e1.distortion == 1.0 && e1.norm_t == 1.0 && e1.norm_tinv == 1.0);

  NormPair doubled{l2, [l2](const std::vector<double>& c) { return 2.0 * l2(c); }};
  DistortionEstimate e2 = distortion_estimate(doubled, 3, opts);
  h.check("distortion_estimate: uniform scaling keeps distortion 1",
          e2.norm_t == 2.0 && e2.norm_tinv == 0.5 && e2.distortion == 1.0);

  NormPair mixed{l2, l1};
  DistortionEstimate e3 = distortion_estimate(mixed, 2, opts);
  h.check("distortion_estimate: l2 -> l1 on the plane approaches sqrt(2)",
          std::fabs(e3.distortion - std::sqrt(2.0)) <= 5e-3);
}

}  // namespace

bool run_props(std::ostream& out, std::uint64_t seed) {
  Harness h{out, std::mt19937_64(seed)};
  props_boxplus(h);
  props_ladder(h);
  props_sparse_dense(h);
  props_ode(h);
  props_phi(h);
  props_seminorm(h);
  props_approx(h);
  props_embed(h);
  props_double_embed(h);
  props_certify(h, seed);
  out << (h.all_ok ? "all properties hold\n" : "property failures detected\n");
  return h.all_ok;
}

}  // namespace varlp::cli
