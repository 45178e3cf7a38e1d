#pragma once

#include <cstddef>
#include <vector>

#include "varlp/intervals.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// Interval partition of [0, 1] given by cut points 0 = c_0 < ... < c_m = 1.
// Atom i is [c_i, c_{i+1}) (the last one closed).
struct FinitePartition {
  std::vector<double> cuts;
  int generation = 0;

  std::size_t atom_count() const { return cuts.size() - 1; }
  Interval atom(std::size_t i) const { return {cuts[i], cuts[i + 1]}; }
  double max_diameter() const;
  bool refines(const FinitePartition& coarser) const;
};

struct TruncationSchedule {
  double scale = 1.0;
  double level(int n) const { return scale * n; }
};

// Compact sets C_1 c C_2 c ... obtained by removing the open
// 2^(-n-2)/max(J,1)-neighbourhood of each of the J jump points of p.
// m(C_n) >= 1 - 2^(-n), and p is constant on every component of C_n.
std::vector<IntervalUnion> lusin_sets(const StepFn& p, int count);

// min(alpha, max(-alpha, f)).
StepFn truncate(const StepFn& f, double alpha);

// Cuts at the seed points plus all dyadic points j / 2^k, so atom diameter
// is at most 2^(-k) and generations refine each other for fixed seeds.
FinitePartition refine_partition(const std::vector<double>& seeds, int k);

// Conditional expectation with respect to the atoms of F intersected with C:
// on each atom, the average of f over (atom ∩ C) spread over (atom ∩ C), and
// zero off C or where the intersection is null.
StepFn cond_expect(const StepFn& f, const IntervalUnion& C, const FinitePartition& F);

}  // namespace varlp
