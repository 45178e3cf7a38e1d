#include "varlp/sequence_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varlp/errors.hpp"

namespace varlp {

double boxplus(double a, double b, double p) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw domain_error("boxplus: arguments must be nonnegative");
  if (!(p >= 1.0)) throw domain_error("boxplus: exponent must be >= 1");
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  if (hi == 0.0) return 0.0;
  if (lo == 0.0) return hi;
  if (std::isinf(p)) return hi;
  double s = lo / hi;
  // hi * (1 + s^p)^(1/p); s^p underflows harmlessly to 0 for huge p.
  return hi * std::exp(std::log1p(std::pow(s, p)) / p);
}

namespace {

void check_connectors(const std::vector<double>& qs) {
  for (double q : qs) {
    if (!(q >= 1.0)) throw domain_error("connector exponents must be >= 1");
  }
}

double fold(const std::vector<double>& mags, const std::vector<double>& connectors,
            Nesting nesting) {
  // mags.size() == connectors.size() + 1, all entries nonnegative.
  if (nesting == Nesting::kLeft) {
    double acc = mags.front();
    for (std::size_t k = 1; k < mags.size(); ++k) {
      acc = boxplus(acc, mags[k], connectors[k - 1]);
    }
    return acc;
  }
  double acc = mags.back();
  for (std::size_t k = mags.size() - 1; k-- > 0;) {
    acc = boxplus(mags[k], acc, connectors[k]);
  }
  return acc;
}

}  // namespace

double ladder_norm(const std::vector<double>& x, const ExponentLadder& ladder, Nesting nesting) {
  if (x.empty()) throw validation_error("ladder_norm: empty vector");
  if (x.size() != ladder.connectors.size() + 1) {
    throw validation_error("ladder_norm: need one connector between consecutive coordinates");
  }
  check_connectors(ladder.connectors);
  std::vector<double> mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::fabs(x[i]);
  return fold(mags, ladder.connectors, nesting);
}

SparseVector::SparseVector(std::vector<SparseEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index < 1) throw validation_error("SparseVector: indices start at 1");
    if (i > 0 && !(entries_[i - 1].index < entries_[i].index)) {
      throw validation_error("SparseVector: indices must be strictly increasing");
    }
  }
}

bool SparseVector::zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SparseEntry& e) { return e.value == 0.0; });
}

SparseVector SparseVector::abs() const {
  std::vector<SparseEntry> out = entries_;
  for (SparseEntry& e : out) e.value = std::fabs(e.value);
  return SparseVector(std::move(out));
}

SparseVector SparseVector::scaled(double c) const {
  std::vector<SparseEntry> out = entries_;
  for (SparseEntry& e : out) e.value *= c;
  return SparseVector(std::move(out));
}

SparseVector SparseVector::add(const SparseVector& a, const SparseVector& b) {
  std::vector<SparseEntry> out;
  out.reserve(a.entries_.size() + b.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() || j < b.entries_.size()) {
    if (j == b.entries_.size() ||
        (i < a.entries_.size() && a.entries_[i].index < b.entries_[j].index)) {
      out.push_back(a.entries_[i++]);
    } else if (i == a.entries_.size() || b.entries_[j].index < a.entries_[i].index) {
      out.push_back(b.entries_[j++]);
    } else {
      out.push_back({a.entries_[i].index, a.entries_[i].value + b.entries_[j].value});
      ++i;
      ++j;
    }
  }
  return SparseVector(std::move(out));
}

SparseVector SparseVector::subtract(const SparseVector& a, const SparseVector& b) {
  return add(a, b.scaled(-1.0));
}

double sparse_norm(const SparseVector& x, const RationalEnum& r, Nesting nesting) {
  const auto& es = x.entries();
  if (es.empty()) return 0.0;
  std::vector<double> mags;
  mags.reserve(es.size());
  for (const SparseEntry& e : es) mags.push_back(std::fabs(e.value));
  std::vector<double> connectors;
  connectors.reserve(es.size() - 1);
  if (nesting == Nesting::kLeft) {
    // Coordinate at position j joins the fold through r(j - 1).
    for (std::size_t k = 1; k < es.size(); ++k) {
      connectors.push_back(r.at(es[k].index - 1).value());
    }
  } else {
    // Right nesting attaches each coordinate to its tail through the
    // connector just after it; trailing zeros collapse away.
    for (std::size_t k = 0; k + 1 < es.size(); ++k) {
      connectors.push_back(r.at(es[k].index).value());
    }
  }
  return fold(mags, connectors, nesting);
}

double double_norm(const VarMatrix& m, const std::vector<double>& outer,
                   const std::vector<double>& inner, Nesting nesting) {
  if (m.rows.empty()) throw validation_error("double_norm: matrix needs at least one row");
  check_connectors(outer);
  check_connectors(inner);
  std::vector<double> row_norms;
  row_norms.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    if (row.empty()) throw validation_error("double_norm: empty row");
    if (row.size() > inner.size() + 1) {
      throw validation_error("double_norm: inner connector list too short");
    }
    ExponentLadder lad{std::vector<double>(inner.begin(), inner.begin() + (row.size() - 1))};
    row_norms.push_back(ladder_norm(row, lad, nesting));
  }
  if (row_norms.size() > outer.size() + 1) {
    throw validation_error("double_norm: outer connector list too short");
  }
  ExponentLadder lad{std::vector<double>(outer.begin(), outer.begin() + (row_norms.size() - 1))};
  return ladder_norm(row_norms, lad, nesting);
}

}  // namespace varlp
