#include "varlp/json_io.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "json.hpp"

#include "varlp/errors.hpp"

namespace varlp {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw validation_error(std::string("invalid JSON: ") + e.what());
  }
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw validation_error(std::string(what) + ": expected a JSON object");
}

void check_fields(const json& j, const char* what, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw validation_error(std::string(what) + ": unknown field '" + item.key() + "'");
    }
  }
  if (!j.contains("schema") || !j["schema"].is_number_integer() ||
      j["schema"].get<int>() != 1) {
    throw validation_error(std::string(what) + ": missing or unsupported schema version");
  }
}

const json& require(const json& j, const char* what, const char* field) {
  if (!j.contains(field)) {
    throw validation_error(std::string(what) + ": missing field '" + field + "'");
  }
  return j.at(field);
}

double number_of(const json& v, const char* what) {
  if (!v.is_number()) throw validation_error(std::string(what) + ": expected a number");
  return v.get<double>();
}

int int_of(const json& v, const char* what) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw validation_error(std::string(what) + ": expected an integer");
  }
  return v.get<int>();
}

std::string string_of(const json& v, const char* what) {
  if (!v.is_string()) throw validation_error(std::string(what) + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& v, const char* what) {
  if (!v.is_array()) throw validation_error(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(number_of(e, what));
  return out;
}

// Exponent lists accept "inf" alongside numbers.
std::vector<double> exponent_list(const json& v, const char* what) {
  if (!v.is_array()) throw validation_error(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (e.is_string()) {
      if (e.get<std::string>() != "inf") {
        throw validation_error(std::string(what) + ": the only exponent string allowed is \"inf\"");
      }
      out.push_back(std::numeric_limits<double>::infinity());
    } else {
      out.push_back(number_of(e, what));
    }
  }
  return out;
}

}  // namespace

StepFn parse_step_fn(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "step function");
  check_fields(j, "step function", {"schema", "breakpoints", "values"});
  return StepFn(number_list(require(j, "step function", "breakpoints"), "step function"),
                number_list(require(j, "step function", "values"), "step function"));
}

std::string serialize_step_fn(const StepFn& f) {
  json j;
  j["schema"] = 1;
  j["breakpoints"] = f.breakpoints();
  j["values"] = f.values();
  return j.dump(2) + "\n";
}

SeqInput parse_seq_input(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "sequence input");
  check_fields(j, "sequence input", {"schema", "values", "connectors", "entries"});
  bool dense = j.contains("values") || j.contains("connectors");
  bool sparse = j.contains("entries");
  if (dense == sparse) {
    throw validation_error(
        "sequence input: provide either values+connectors or entries, not both");
  }
  SeqInput in;
  if (dense) {
    in.sparse = false;
    in.values = number_list(require(j, "sequence input", "values"), "sequence input");
    in.connectors =
        exponent_list(require(j, "sequence input", "connectors"), "sequence input");
    return in;
  }
  in.sparse = true;
  const json& entries = require(j, "sequence input", "entries");
  if (!entries.is_array()) throw validation_error("sequence input: entries must be an array");
  std::vector<SparseEntry> es;
  es.reserve(entries.size());
  for (const json& e : entries) {
    require_object(e, "sequence entry");
    for (const auto& item : e.items()) {
      if (item.key() != "index" && item.key() != "value") {
        throw validation_error("sequence entry: unknown field '" + item.key() + "'");
      }
    }
    const json& idx = require(e, "sequence entry", "index");
    if (!idx.is_string()) {
      throw validation_error("sequence entry: index must be a decimal string");
    }
    BigInt index;
    try {
      index = BigInt(idx.get<std::string>());
    } catch (const std::exception&) {
      throw validation_error("sequence entry: malformed index '" + idx.get<std::string>() + "'");
    }
    es.push_back({index, number_of(require(e, "sequence entry", "value"), "sequence entry")});
  }
  in.entries = SparseVector(std::move(es));
  return in;
}

MatrixInput parse_matrix_input(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "matrix input");
  check_fields(j, "matrix input", {"schema", "rows", "outer", "inner"});
  const json& rows = require(j, "matrix input", "rows");
  if (!rows.is_array()) throw validation_error("matrix input: rows must be an array");
  MatrixInput in;
  for (const json& row : rows) {
    in.matrix.rows.push_back(number_list(row, "matrix input"));
  }
  in.outer = exponent_list(require(j, "matrix input", "outer"), "matrix input");
  in.inner = exponent_list(require(j, "matrix input", "inner"), "matrix input");
  return in;
}

IntervalUnion parse_interval_union(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "interval union");
  check_fields(j, "interval union", {"schema", "intervals"});
  const json& parts = require(j, "interval union", "intervals");
  if (!parts.is_array()) throw validation_error("interval union: intervals must be an array");
  std::vector<Interval> ivs;
  for (const json& part : parts) {
    if (!part.is_array() || part.size() != 2) {
      throw validation_error("interval union: each interval must be [lo, hi]");
    }
    ivs.push_back({number_of(part[0], "interval union"), number_of(part[1], "interval union")});
  }
  return IntervalUnion(ivs);
}

namespace {

json step_to_json(const StepFn& f) {
  json j;
  j["breakpoints"] = f.breakpoints();
  j["values"] = f.values();
  return j;
}

StepFn step_from_json(const json& j, const char* what) {
  require_object(j, what);
  for (const auto& item : j.items()) {
    if (item.key() != "breakpoints" && item.key() != "values") {
      throw validation_error(std::string(what) + ": unknown field '" + item.key() + "'");
    }
  }
  return StepFn(number_list(require(j, what, "breakpoints"), what),
                number_list(require(j, what, "values"), what));
}

}  // namespace

std::vector<StepFn> parse_basis(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "basis file");
  check_fields(j, "basis file", {"schema", "basis"});
  const json& basis = require(j, "basis file", "basis");
  if (!basis.is_array() || basis.empty()) {
    throw validation_error("basis file: basis must be a nonempty array");
  }
  std::vector<StepFn> out;
  for (const json& b : basis) out.push_back(step_from_json(b, "basis element"));
  return out;
}

EmbeddingCertificate parse_certificate(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "certificate");
  check_fields(j, "certificate",
               {"schema", "kind", "scheme", "stage", "dimension", "eps", "delta", "seed",
                "samples", "refine_iters", "norm_t", "norm_tinv", "distortion",
                "recheck_distortion", "verified", "basis", "p", "partition_cap",
                "truncation_scale", "positions", "connectors"});
  const char* what = "certificate";
  if (string_of(require(j, what, "kind"), what) != "embedding-certificate") {
    throw validation_error("certificate: wrong kind");
  }
  EmbeddingCertificate cert;
  cert.scheme = string_of(require(j, what, "scheme"), what);
  cert.stage = int_of(require(j, what, "stage"), what);
  cert.dimension = int_of(require(j, what, "dimension"), what);
  cert.eps = number_of(require(j, what, "eps"), what);
  cert.delta = number_of(require(j, what, "delta"), what);
  const json& seed = require(j, what, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw validation_error("certificate: seed must be a nonnegative integer");
  }
  cert.seed = seed.get<std::uint64_t>();
  cert.samples = int_of(require(j, what, "samples"), what);
  cert.refine_iters = int_of(require(j, what, "refine_iters"), what);
  cert.norm_t = number_of(require(j, what, "norm_t"), what);
  cert.norm_tinv = number_of(require(j, what, "norm_tinv"), what);
  cert.distortion = number_of(require(j, what, "distortion"), what);
  cert.recheck_distortion = number_of(require(j, what, "recheck_distortion"), what);
  const json& verified = require(j, what, "verified");
  if (!verified.is_boolean()) throw validation_error("certificate: verified must be a boolean");
  cert.verified = verified.get<bool>();
  const json& basis = require(j, what, "basis");
  if (!basis.is_array()) throw validation_error("certificate: basis must be an array");
  cert.basis.clear();
  for (const json& b : basis) cert.basis.push_back(step_from_json(b, "certificate basis"));
  cert.p = step_from_json(require(j, what, "p"), "certificate exponent");
  cert.partition_cap = int_of(require(j, what, "partition_cap"), what);
  cert.truncation_scale = number_of(require(j, what, "truncation_scale"), what);
  const json& positions = require(j, what, "positions");
  const json& connectors = require(j, what, "connectors");
  if (!positions.is_array() || !connectors.is_array()) {
    throw validation_error("certificate: positions and connectors must be arrays");
  }
  for (const json& s : positions) {
    if (!s.is_string()) throw validation_error("certificate: positions must be decimal strings");
    cert.positions.push_back(s.get<std::string>());
  }
  for (const json& s : connectors) {
    if (!s.is_string()) throw validation_error("certificate: connectors must be strings");
    cert.connectors.push_back(s.get<std::string>());
  }
  return cert;
}

std::string serialize_certificate(const EmbeddingCertificate& cert) {
  json j;
  j["schema"] = 1;
  j["kind"] = "embedding-certificate";
  j["scheme"] = cert.scheme;
  j["stage"] = cert.stage;
  j["dimension"] = cert.dimension;
  j["eps"] = cert.eps;
  j["delta"] = cert.delta;
  j["seed"] = cert.seed;
  j["samples"] = cert.samples;
  j["refine_iters"] = cert.refine_iters;
  j["norm_t"] = cert.norm_t;
  j["norm_tinv"] = cert.norm_tinv;
  j["distortion"] = cert.distortion;
  j["recheck_distortion"] = cert.recheck_distortion;
  j["verified"] = cert.verified;
  json basis = json::array();
  for (const StepFn& f : cert.basis) basis.push_back(step_to_json(f));
  j["basis"] = basis;
  j["p"] = step_to_json(cert.p);
  j["partition_cap"] = cert.partition_cap;
  j["truncation_scale"] = cert.truncation_scale;
  j["positions"] = cert.positions;
  j["connectors"] = cert.connectors;
  return j.dump(2) + "\n";
}

}  // namespace varlp
