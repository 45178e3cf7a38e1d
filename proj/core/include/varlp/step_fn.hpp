#pragma once

#include <functional>
#include <vector>

#include "varlp/intervals.hpp"

namespace varlp {

// Piecewise-constant function on [0, 1]. Cells are half-open [b_i, b_{i+1})
// except the last, which is closed. Breakpoints are strictly increasing with
// b_0 = 0 and b_K = 1.
class StepFn {
 public:
  StepFn(std::vector<double> breakpoints, std::vector<double> values);
  static StepFn constant(double v);

  std::size_t cells() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  double cell_value(std::size_t i) const { return values_[i]; }
  double cell_length(std::size_t i) const { return breaks_[i + 1] - breaks_[i]; }

  double value_at(double t) const;
  double max_abs() const;
  double min_value() const;
  double max_value() const;

  // Interior breakpoints where the value actually changes.
  std::vector<double> jump_points() const;

  // Same function on a finer grid containing the given extra cut points
  // (cuts outside (0,1) are ignored).
  StepFn refined(const std::vector<double>& cuts) const;

  // Pointwise combination on the common refinement of both grids.
  static StepFn combine(const StepFn& a, const StepFn& b,
                        const std::function<double(double, double)>& op);

  StepFn map(const std::function<double(double)>& op) const;

  // f * 1_C: zero outside C. Breakpoints gain C's endpoints.
  StepFn restrict_to(const IntervalUnion& C) const;

  bool constant_on(const IntervalUnion& S, double* value_out = nullptr) const;

  friend bool operator==(const StepFn& a, const StepFn& b) = default;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

// Sum of f over S (an exact finite sum of value * length terms).
double integrate(const StepFn& f, const IntervalUnion& S);

// Sum of |f|^p over S.
double power_integral(const StepFn& f, double p, const IntervalUnion& S);

// Uniform midpoint samples of a function on [0, 1]; converts to the step
// function that is constant on each sampling cell.
struct SampledFn {
  std::size_t n = 0;
  std::vector<double> midpoint_values;

  static SampledFn from_function(const std::function<double(double)>& fn, std::size_t n);
  static SampledFn from_step(const StepFn& f, std::size_t n);
  StepFn to_step() const;
};

}  // namespace varlp
