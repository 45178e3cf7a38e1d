#include "varlp/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "varlp/errors.hpp"

namespace varlp {

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  for (const Interval& iv : parts) {
    if (!(iv.lo >= 0.0) || !(iv.hi <= 1.0) || !(iv.lo <= iv.hi)) {
      throw validation_error("IntervalUnion: parts must satisfy 0 <= lo <= hi <= 1");
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

IntervalUnion IntervalUnion::unit() { return IntervalUnion({{0.0, 1.0}}); }

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const Interval& iv : parts_) m += iv.length();
  return m;
}

bool IntervalUnion::contains(double t) const {
  for (const Interval& iv : parts_) {
    if (t < iv.lo) return false;
    if (t <= iv.hi) return true;
  }
  return false;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  for (const Interval& o : other.parts_) {
    bool covered = false;
    for (const Interval& iv : parts_) {
      if (o.lo >= iv.lo && o.hi <= iv.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

IntervalUnion IntervalUnion::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const Interval& iv : parts_) {
    double lo = std::max(iv.lo, window.lo);
    double hi = std::min(iv.hi, window.hi);
    if (lo <= hi) out.push_back({lo, hi});
  }
  IntervalUnion r;
  r.parts_ = std::move(out);  // already sorted and disjoint
  return r;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> out;
  for (const Interval& w : other.parts_) {
    IntervalUnion piece = intersect(w);
    out.insert(out.end(), piece.parts_.begin(), piece.parts_.end());
  }
  IntervalUnion r;
  std::sort(out.begin(), out.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  r.parts_ = std::move(out);
  return r;
}

IntervalUnion IntervalUnion::complement_in_unit() const {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const Interval& iv : parts_) {
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < 1.0) out.push_back({cursor, 1.0});
  IntervalUnion r;
  r.parts_ = std::move(out);
  return r;
}

std::vector<double> IntervalUnion::endpoints() const {
  std::vector<double> out;
  out.reserve(parts_.size() * 2);
  for (const Interval& iv : parts_) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace varlp
