#pragma once

#include <vector>

namespace varlp {

// Closed interval [lo, hi] inside [0, 1]. Degenerate (lo == hi) intervals are
// permitted; they carry no measure.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Finite union of disjoint closed intervals, kept sorted. The normal form
// merges overlapping or touching parts, so `parts()` is strictly increasing
// with positive gaps between consecutive intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);

  static IntervalUnion unit();  // [0, 1]

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  double measure() const;
  double min() const { return parts_.front().lo; }
  double max() const { return parts_.back().hi; }

  bool contains(double t) const;
  bool contains(const IntervalUnion& other) const;

  IntervalUnion intersect(const Interval& window) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  // [0,1] \ this, up to the measure-zero boundary points.
  IntervalUnion complement_in_unit() const;

  // All interval endpoints, sorted, deduplicated.
  std::vector<double> endpoints() const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace varlp
