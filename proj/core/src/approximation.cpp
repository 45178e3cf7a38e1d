#include "varlp/approximation.hpp"

#include <algorithm>
#include <cmath>

#include "varlp/errors.hpp"

namespace varlp {

double FinitePartition::max_diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) d = std::max(d, cuts[i + 1] - cuts[i]);
  return d;
}

bool FinitePartition::refines(const FinitePartition& coarser) const {
  return std::includes(cuts.begin(), cuts.end(), coarser.cuts.begin(), coarser.cuts.end());
}

std::vector<IntervalUnion> lusin_sets(const StepFn& p, int count) {
  if (count < 1) throw validation_error("lusin_sets: count must be >= 1");
  std::vector<double> jumps = p.jump_points();
  double j_scale = std::max<std::size_t>(jumps.size(), 1);
  std::vector<IntervalUnion> out;
  out.reserve(count);
  for (int n = 1; n <= count; ++n) {
    double radius = std::ldexp(1.0, -n - 2) / j_scale;
    std::vector<Interval> removed;
    removed.reserve(jumps.size());
    for (double t : jumps) {
      removed.push_back({std::max(0.0, t - radius), std::min(1.0, t + radius)});
    }
    out.push_back(IntervalUnion(std::move(removed)).complement_in_unit());
  }
  return out;
}

StepFn truncate(const StepFn& f, double alpha) {
  if (!(alpha >= 0.0)) throw domain_error("truncate: level must be nonnegative");
  return f.map([alpha](double v) { return std::min(alpha, std::max(-alpha, v)); });
}

FinitePartition refine_partition(const std::vector<double>& seeds, int k) {
  if (k < 0) throw validation_error("refine_partition: generation must be >= 0");
  FinitePartition part;
  part.generation = k;
  part.cuts.push_back(0.0);
  part.cuts.push_back(1.0);
  for (double s : seeds) {
    if (s > 0.0 && s < 1.0) part.cuts.push_back(s);
  }
  std::size_t cells = std::size_t{1} << k;
  for (std::size_t j = 1; j < cells; ++j) {
    part.cuts.push_back(static_cast<double>(j) / static_cast<double>(cells));
  }
  std::sort(part.cuts.begin(), part.cuts.end());
  part.cuts.erase(std::unique(part.cuts.begin(), part.cuts.end()), part.cuts.end());
  return part;
}

StepFn cond_expect(const StepFn& f, const IntervalUnion& C, const FinitePartition& F) {
  std::vector<double> grid = F.cuts;
  for (double e : C.endpoints()) {
    if (e > 0.0 && e < 1.0) grid.push_back(e);
  }
  for (double b : f.breakpoints()) {
    if (b > 0.0 && b < 1.0) grid.push_back(b);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> vals(grid.size() - 1, 0.0);
  for (std::size_t i = 0; i < F.atom_count(); ++i) {
    IntervalUnion piece = C.intersect(F.atom(i));
    double w = piece.measure();
    if (w <= 0.0) continue;  // null intersections contribute zero
    double avg;
    // Averaging a constant reproduces it without rounding.
    if (!f.constant_on(piece, &avg)) avg = integrate(f, piece) / w;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
      double mid = 0.5 * (grid[g] + grid[g + 1]);
      if (mid > F.atom(i).lo && mid < F.atom(i).hi && C.contains(mid)) vals[g] = avg;
    }
  }
  return StepFn(std::move(grid), std::move(vals));
}

}  // namespace varlp
