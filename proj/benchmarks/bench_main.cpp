// Micro benchmarks for the hot paths: the per-cell norm recurrence, nested
// folds, rational placement, and the stage/certificate pipelines.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "varlp/approximation.hpp"
#include "varlp/certify.hpp"
#include "varlp/embedding.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/sequence_norms.hpp"
#include "varlp/step_fn.hpp"

using namespace varlp;

namespace {

const RationalEnum& renum() {
  static RationalEnum r;
  return r;
}

StepFn random_step(std::mt19937_64& rng, int cells, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.01, 0.99), v(lo, hi);
  std::vector<double> b{0.0, 1.0};
  while (int(b.size()) < cells + 1) b.push_back(u(rng));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) vals.push_back(v(rng));
  return StepFn(b, vals);
}

void BM_boxplus_fold(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> v(0.1, 2.0), p(1.0, 8.0);
  std::vector<double> vals, exps;
  for (int i = 0; i < int(state.range(0)); ++i) {
    vals.push_back(v(rng));
    exps.push_back(p(rng));
  }
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) acc = boxplus(acc, vals[i], exps[i]);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_boxplus_fold)->Arg(16)->Arg(256)->Arg(4096);

void BM_phi_step(benchmark::State& state) {
  std::mt19937_64 rng(2);
  StepFn f = random_step(rng, int(state.range(0)), 0.2, 2.0);
  StepFn p = random_step(rng, 8, 1.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_step(f, p).terminal());
  }
}
BENCHMARK(BM_phi_step)->Arg(8)->Arg(64)->Arg(512);

void BM_phi_numeric(benchmark::State& state) {
  StepFn f({0.0, 1.0 / 3.0, 1.0}, {1.5, 0.5});
  StepFn p({0.0, 0.5, 1.0}, {1.5, 2.5});
  SampledFn fs = SampledFn::from_step(f, std::size_t(state.range(0)));
  SampledFn ps = SampledFn::from_step(p, std::size_t(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_numeric(fs, ps).terminal());
  }
}
BENCHMARK(BM_phi_numeric)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_find_index_above(benchmark::State& state) {
  // Exercise both the scan and the analytic fallback regions.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(1.0, 3.5);
  double delta = state.range(0) == 0 ? 1e-2 : 1e-5;
  for (auto _ : state) {
    FindResult fr = renum().find_index_above(t(rng), delta, BigInt(0));
    benchmark::DoNotOptimize(fr.index);
  }
}
BENCHMARK(BM_find_index_above)->Arg(0)->Arg(1);

void BM_sparse_norm(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> v(0.1, 2.0);
  std::vector<SparseEntry> entries;
  BigInt pos(1);
  for (int i = 0; i < int(state.range(0)); ++i) {
    pos = pos + BigInt(1 + rng() % 1000);
    entries.push_back({pos, v(rng)});
  }
  SparseVector x{std::move(entries)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparse_norm(x, renum()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sparse_norm)->Arg(16)->Arg(256);

void BM_cond_expect(benchmark::State& state) {
  std::mt19937_64 rng(5);
  StepFn f = random_step(rng, 12, 0.2, 2.0);
  FinitePartition part = refine_partition(f.jump_points(), int(state.range(0)));
  IntervalUnion unit = IntervalUnion::unit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cond_expect(f, unit, part));
  }
}
BENCHMARK(BM_cond_expect)->Arg(3)->Arg(6)->Arg(9);

void BM_build_stage(benchmark::State& state) {
  StepFn f({0.0, 0.3, 0.7, 1.0}, {1.0, 0.5, 1.5});
  StepFn p({0.0, 0.5, 1.0}, {1.5, 2.5});
  EmbedConfig config;
  int n = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_stage(f, p, n, config, renum()).first.stage_norm);
  }
}
BENCHMARK(BM_build_stage)->Arg(3)->Arg(10)->Arg(30);

void BM_distortion(benchmark::State& state) {
  DistortionOptions opts;
  opts.samples = int(state.range(0));
  NormPair norms;
  norms.domain = [](const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += x * x;
    return std::sqrt(s);
  };
  norms.image = [](const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += std::fabs(x);
    return s;
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(distortion_estimate(norms, 3, opts).distortion);
  }
}
BENCHMARK(BM_distortion)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
