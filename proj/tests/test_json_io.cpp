#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "varlp/errors.hpp"
#include "varlp/json_io.hpp"

using varlp::EmbeddingCertificate;
using varlp::MatrixInput;
using varlp::parse_basis;
using varlp::parse_certificate;
using varlp::parse_interval_union;
using varlp::parse_matrix_input;
using varlp::parse_seq_input;
using varlp::parse_step_fn;
using varlp::SeqInput;
using varlp::serialize_certificate;
using varlp::serialize_step_fn;
using varlp::StepFn;

TEST_CASE("step functions round-trip through JSON") {
  StepFn f({0.0, 0.25, 1.0}, {1.5, -2.0});
  StepFn back = parse_step_fn(serialize_step_fn(f));
  CHECK(back == f);
  StepFn g = parse_step_fn(
      R"({"schema":1,"breakpoints":[0,0.5,1],"values":[3,4]})");
  CHECK(g.value_at(0.25) == 3.0);
  CHECK(g.value_at(0.75) == 4.0);
}

TEST_CASE("step function parsing fails closed") {
  CHECK_THROWS_AS(parse_step_fn("not json"), varlp::validation_error);
  CHECK_THROWS_AS(parse_step_fn(R"([1,2,3])"), varlp::validation_error);
  CHECK_THROWS_AS(
      parse_step_fn(R"({"schema":2,"breakpoints":[0,1],"values":[1]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_step_fn(R"({"breakpoints":[0,1],"values":[1]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_step_fn(
          R"({"schema":1,"breakpoints":[0,1],"values":[1],"extra":0})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_step_fn(R"({"schema":1,"breakpoints":[0,1],"values":["x"]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_step_fn(R"({"schema":1,"breakpoints":[0.2,1],"values":[1]})"),
      varlp::validation_error);
}

TEST_CASE("basis files hold a nonempty list of step functions") {
  std::vector<StepFn> basis = parse_basis(
      R"({"schema":1,"basis":[
            {"breakpoints":[0,0.5,1],"values":[1,0]},
            {"breakpoints":[0,0.5,1],"values":[0,1]}]})");
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].value_at(0.25) == 1.0);
  CHECK(basis[1].value_at(0.75) == 1.0);
  CHECK_THROWS_AS(parse_basis(R"({"schema":1,"basis":[]})"),
                  varlp::validation_error);
  CHECK_THROWS_AS(
      parse_basis(R"({"schema":1,"basis":[{"values":[1]}]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_basis(
          R"({"schema":1,"basis":[{"breakpoints":[0,1],"values":[1],"p":2}]})"),
      varlp::validation_error);
}

TEST_CASE("sequence input takes dense or sparse form, never both") {
  SeqInput dense = parse_seq_input(
      R"({"schema":1,"values":[3,4],"connectors":[2]})");
  CHECK(!dense.sparse);
  CHECK(dense.values == std::vector<double>{3.0, 4.0});
  CHECK(dense.connectors == std::vector<double>{2.0});

  SeqInput inf = parse_seq_input(
      R"({"schema":1,"values":[3,4],"connectors":["inf"]})");
  CHECK(std::isinf(inf.connectors[0]));

  SeqInput sparse = parse_seq_input(
      R"({"schema":1,"entries":[{"index":"1","value":3},
                                 {"index":"7","value":-4}]})");
  CHECK(sparse.sparse);
  REQUIRE(sparse.entries.entries().size() == 2);
  CHECK(sparse.entries.entries()[1].index == varlp::BigInt(7));
  CHECK(sparse.entries.entries()[1].value == -4.0);

  CHECK_THROWS_AS(
      parse_seq_input(
          R"({"schema":1,"values":[1],"connectors":[],"entries":[]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(parse_seq_input(R"({"schema":1})"),
                  varlp::validation_error);
  CHECK_THROWS_AS(
      parse_seq_input(R"({"schema":1,"entries":[{"index":7,"value":1}]})"),
      varlp::validation_error);  // index must be a decimal string
  CHECK_THROWS_AS(
      parse_seq_input(R"({"schema":1,"entries":[{"index":"0","value":1}]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_seq_input(
          R"({"schema":1,"values":[1],"connectors":["huge"]})"),
      varlp::validation_error);
}

TEST_CASE("matrix input parses rows with both connector lists") {
  MatrixInput m = parse_matrix_input(
      R"({"schema":1,"rows":[[3,4],[12]],"outer":[2],"inner":[2,2]})");
  REQUIRE(m.matrix.rows.size() == 2);
  CHECK(m.matrix.rows[1] == std::vector<double>{12.0});
  CHECK(m.outer == std::vector<double>{2.0});
  CHECK(m.inner == std::vector<double>{2.0, 2.0});
  CHECK_THROWS_AS(
      parse_matrix_input(R"({"schema":1,"rows":[[1]],"outer":[]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_matrix_input(
          R"({"schema":1,"rows":"x","outer":[],"inner":[]})"),
      varlp::validation_error);
}

TEST_CASE("interval unions parse and normalize") {
  varlp::IntervalUnion u = parse_interval_union(
      R"({"schema":1,"intervals":[[0,0.25],[0.25,0.5],[0.75,1]]})");
  CHECK(u.parts().size() == 2);  // touching parts merge
  CHECK(u.measure() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(
      parse_interval_union(R"({"schema":1,"intervals":[[0.5,0.25]]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_interval_union(R"({"schema":1,"intervals":[[0,2]]})"),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_interval_union(R"({"schema":1,"intervals":[[0]]})"),
      varlp::validation_error);
}

TEST_CASE("certificates round-trip byte-for-byte") {
  EmbeddingCertificate cert;
  cert.scheme = "calkin-wilf-geq1";
  cert.stage = 3;
  cert.dimension = 2;
  cert.eps = 0.05;
  cert.delta = 1e-3;
  cert.seed = 17;
  cert.samples = 1000;
  cert.refine_iters = 50;
  cert.norm_t = 1.01;
  cert.norm_tinv = 1.02;
  cert.distortion = 1.0302;
  cert.recheck_distortion = 1.031;
  cert.verified = true;
  cert.basis = {StepFn({0.0, 0.5, 1.0}, {1.0, 0.0}),
                StepFn({0.0, 0.5, 1.0}, {0.0, 1.0})};
  cert.p = StepFn({0.0, 0.5, 1.0}, {1.5, 2.5});
  cert.partition_cap = 6;
  cert.truncation_scale = 1.0;
  cert.positions = {"1", "5", "12"};
  cert.connectors = {"3/2", "5/2"};

  std::string text = serialize_certificate(cert);
  EmbeddingCertificate back = parse_certificate(text);
  CHECK(serialize_certificate(back) == text);
  CHECK(back.scheme == cert.scheme);
  CHECK(back.stage == cert.stage);
  CHECK(back.seed == cert.seed);
  CHECK(back.verified == cert.verified);
  CHECK(back.basis.size() == 2);
  CHECK(back.basis[0] == cert.basis[0]);
  CHECK(back.p == cert.p);
  CHECK(back.positions == cert.positions);
  CHECK(back.connectors == cert.connectors);
  CHECK(text.back() == '\n');
}

TEST_CASE("certificate parsing fails closed") {
  EmbeddingCertificate cert;
  cert.scheme = "calkin-wilf-geq1";
  cert.stage = 1;
  cert.dimension = 1;
  cert.seed = 1;
  cert.basis = {StepFn::constant(1.0)};
  cert.p = StepFn::constant(2.0);
  cert.positions = {"1"};
  std::string good = serialize_certificate(cert);

  auto corrupt = [&](const std::string& from, const std::string& to) {
    std::string text = good;
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
  };

  CHECK_THROWS_AS(parse_certificate(corrupt("\"schema\": 1", "\"schema\": 2")),
                  varlp::validation_error);
  CHECK_THROWS_AS(parse_certificate(corrupt("\"seed\": 1", "\"seed\": -4")),
                  varlp::validation_error);
  CHECK_THROWS_AS(
      parse_certificate(corrupt("\"stage\": 1", "\"stage\": 1, \"zzz\": 0")),
      varlp::validation_error);
  CHECK_THROWS_AS(
      parse_certificate(corrupt("\"positions\": [\n    \"1\"\n  ]",
                                "\"positions\": [1]")),
      varlp::validation_error);
  CHECK_THROWS_AS(parse_certificate("{}"), varlp::validation_error);
}
