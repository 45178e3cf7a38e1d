#include "varlp/step_fn.hpp"

#include <algorithm>
#include <cmath>

#include "varlp/errors.hpp"

namespace varlp {

StepFn::StepFn(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size()) {
    throw validation_error("StepFn: need K+1 breakpoints for K cell values");
  }
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0) {
    throw validation_error("StepFn: domain must be [0, 1]");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw validation_error("StepFn: breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw validation_error("StepFn: values must be finite");
  }
}

StepFn StepFn::constant(double v) { return StepFn({0.0, 1.0}, {v}); }

double StepFn::value_at(double t) const {
  if (t < 0.0 || t > 1.0) throw domain_error("StepFn: argument outside [0, 1]");
  // Last cell is closed at 1.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t cell = static_cast<std::size_t>(it - breaks_.begin());
  if (cell == 0) cell = 1;
  if (cell > values_.size()) cell = values_.size();
  return values_[cell - 1];
}

double StepFn::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double StepFn::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double StepFn::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::vector<double> StepFn::jump_points() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (values_[i] != values_[i + 1]) out.push_back(breaks_[i + 1]);
  }
  return out;
}

StepFn StepFn::refined(const std::vector<double>& cuts) const {
  std::vector<double> grid = breaks_;
  for (double c : cuts) {
    if (c > 0.0 && c < 1.0) grid.push_back(c);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> vals;
  vals.reserve(grid.size() - 1);
  std::size_t cell = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (cell + 1 < values_.size() && breaks_[cell + 1] <= grid[i]) ++cell;
    vals.push_back(values_[cell]);
  }
  return StepFn(std::move(grid), std::move(vals));
}

StepFn StepFn::combine(const StepFn& a, const StepFn& b,
                       const std::function<double(double, double)>& op) {
  std::vector<double> grid = a.breaks_;
  grid.insert(grid.end(), b.breaks_.begin(), b.breaks_.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  StepFn fa = a.refined(grid);
  StepFn fb = b.refined(grid);
  std::vector<double> vals(fa.values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = op(fa.values_[i], fb.values_[i]);
  }
  return StepFn(std::move(grid), std::move(vals));
}

StepFn StepFn::map(const std::function<double(double)>& op) const {
  std::vector<double> vals(values_);
  for (double& v : vals) v = op(v);
  return StepFn(breaks_, std::move(vals));
}

StepFn StepFn::restrict_to(const IntervalUnion& C) const {
  StepFn fine = refined(C.endpoints());
  for (std::size_t i = 0; i < fine.values_.size(); ++i) {
    double mid = 0.5 * (fine.breaks_[i] + fine.breaks_[i + 1]);
    if (!C.contains(mid)) fine.values_[i] = 0.0;
  }
  return fine;
}

bool StepFn::constant_on(const IntervalUnion& S, double* value_out) const {
  bool seen = false;
  double value = 0.0;
  for (const Interval& iv : S.parts()) {
    if (iv.length() == 0.0) continue;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      double lo = std::max(breaks_[i], iv.lo);
      double hi = std::min(breaks_[i + 1], iv.hi);
      if (lo >= hi) continue;
      if (!seen) {
        value = values_[i];
        seen = true;
      } else if (values_[i] != value) {
        return false;
      }
    }
  }
  if (seen && value_out) *value_out = value;
  return seen;
}

double integrate(const StepFn& f, const IntervalUnion& S) {
  double acc = 0.0;
  const auto& b = f.breakpoints();
  for (const Interval& iv : S.parts()) {
    for (std::size_t i = 0; i < f.cells(); ++i) {
      double lo = std::max(b[i], iv.lo);
      double hi = std::min(b[i + 1], iv.hi);
      if (lo < hi) acc += f.cell_value(i) * (hi - lo);
    }
  }
  return acc;
}

double power_integral(const StepFn& f, double p, const IntervalUnion& S) {
  double acc = 0.0;
  const auto& b = f.breakpoints();
  for (const Interval& iv : S.parts()) {
    for (std::size_t i = 0; i < f.cells(); ++i) {
      double lo = std::max(b[i], iv.lo);
      double hi = std::min(b[i + 1], iv.hi);
      if (lo < hi) acc += std::pow(std::fabs(f.cell_value(i)), p) * (hi - lo);
    }
  }
  return acc;
}

SampledFn SampledFn::from_function(const std::function<double(double)>& fn, std::size_t n) {
  if (n == 0) throw validation_error("SampledFn: need at least one sample");
  SampledFn s;
  s.n = n;
  s.midpoint_values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.midpoint_values.push_back(fn((static_cast<double>(i) + 0.5) / static_cast<double>(n)));
  }
  return s;
}

SampledFn SampledFn::from_step(const StepFn& f, std::size_t n) {
  return from_function([&f](double t) { return f.value_at(t); }, n);
}

StepFn SampledFn::to_step() const {
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(n));
  }
  return StepFn(std::move(grid), midpoint_values);
}

}  // namespace varlp
