#pragma once

#include <string>
#include <vector>

#include "varlp/certify.hpp"
#include "varlp/intervals.hpp"
#include "varlp/sequence_norms.hpp"
#include "varlp/step_fn.hpp"

namespace varlp {

// All parsers reject malformed JSON, wrong "schema" versions, and unknown
// fields (fail closed) with validation_error.  Connector exponent lists
// accept the string "inf" for an infinite exponent.

// {"schema":1, "breakpoints":[0,...,1], "values":[...]}
StepFn parse_step_fn(const std::string& text);
std::string serialize_step_fn(const StepFn& f);

// {"schema":1, "basis":[{"breakpoints":[...], "values":[...]}, ...]}
std::vector<StepFn> parse_basis(const std::string& text);

// Either a dense vector with its own connector list:
//   {"schema":1, "values":[...], "connectors":[...]}
// or entries placed at enumeration positions (decimal-string indices):
//   {"schema":1, "entries":[{"index":"7","value":0.5}, ...]}
struct SeqInput {
  bool sparse = false;
  std::vector<double> values;      // dense form
  std::vector<double> connectors;  // dense form
  SparseVector entries;            // sparse form
};
SeqInput parse_seq_input(const std::string& text);

// {"schema":1, "rows":[[...],...], "outer":[...], "inner":[...]}
struct MatrixInput {
  VarMatrix matrix;
  std::vector<double> outer;
  std::vector<double> inner;
};
MatrixInput parse_matrix_input(const std::string& text);

// {"schema":1, "intervals":[[a,b],...]}
IntervalUnion parse_interval_union(const std::string& text);

EmbeddingCertificate parse_certificate(const std::string& text);
std::string serialize_certificate(const EmbeddingCertificate& cert);

}  // namespace varlp
