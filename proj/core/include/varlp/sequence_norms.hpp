#pragma once

#include <vector>

#include "varlp/rationals.hpp"

namespace varlp {

enum class Nesting { kLeft, kRight };

// (a^p + b^p)^(1/p) for a, b >= 0 and p in [1, inf]; p = inf gives max(a, b).
// Evaluated as max * (1 + (min/max)^p)^(1/p), which survives exponents far
// beyond the overflow range of the naive power sum.
double boxplus(double a, double b, double p);

// Connector exponents q_2, ..., q_m joining m = connectors + 1 coordinates.
struct ExponentLadder {
  std::vector<double> connectors;
};

// Nested sequence-space norm of x: left nesting folds
// ((|x1| # |x2|) # |x3|) ..., right nesting |x1| # (|x2| # (...)).
double ladder_norm(const std::vector<double>& x, const ExponentLadder& ladder,
                   Nesting nesting = Nesting::kLeft);

// Finitely supported vector indexed by enumeration positions.  Entries are
// strictly increasing in index; explicit zero values are allowed.
struct SparseEntry {
  BigInt index;  // >= 1
  double value = 0.0;
};

class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::vector<SparseEntry> entries);

  const std::vector<SparseEntry>& entries() const { return entries_; }
  bool zero() const;

  SparseVector abs() const;
  SparseVector scaled(double c) const;
  static SparseVector add(const SparseVector& a, const SparseVector& b);
  static SparseVector subtract(const SparseVector& a, const SparseVector& b);

 private:
  std::vector<SparseEntry> entries_;
};

// Norm of a sparse vector in the variable-exponent sequence space whose
// connector before position j is r(j - 1).  Zero coordinates collapse
// (a # 0 = a), so only connectors immediately preceding supported positions
// participate in the fold.
double sparse_norm(const SparseVector& x, const RationalEnum& r,
                   Nesting nesting = Nesting::kLeft);

// Possibly ragged real matrix: rows of independent lengths.
struct VarMatrix {
  std::vector<std::vector<double>> rows;
};

// Two-phase nested norm: each row folded with the inner connector list, the
// row norms folded with the outer list.  Connector lists may be longer than
// needed; they must not be shorter.
double double_norm(const VarMatrix& m, const std::vector<double>& outer,
                   const std::vector<double>& inner, Nesting nesting = Nesting::kLeft);

}  // namespace varlp
