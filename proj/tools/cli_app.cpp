#include "cli_app.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "props.hpp"
#include "varlp/approximation.hpp"
#include "varlp/embedding.hpp"
#include "varlp/errors.hpp"
#include "varlp/json_io.hpp"
#include "varlp/ode_norm.hpp"
#include "varlp/rationals.hpp"
#include "varlp/seminorm.hpp"
#include "varlp/sequence_norms.hpp"
#include "varlp/step_fn.hpp"

namespace varlp::cli {

namespace {

// Shortest deterministic round-trip form; identical inputs give identical
// output bytes, which the determinism contract depends on.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open output file: " + path);
  out << content;
  if (!out) throw validation_error("failed writing output file: " + path);
}

// VARLP_THREADS caps internal parallelism.  The current kernels are
// sequential (stage placement threads a running index; sampling uses fixed
// batch order for reproducibility), so the cap is validated and reserved.
void validate_threads_env() {
  const char* tv = std::getenv("VARLP_THREADS");
  if (tv == nullptr) return;
  std::string s(tv);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw validation_error("VARLP_THREADS must be a positive integer");
  }
  long v = 0;
  try {
    v = std::stol(s);
  } catch (const std::exception&) {
    throw validation_error("VARLP_THREADS must be a positive integer");
  }
  if (v < 1 || v > 8192) {
    throw validation_error("VARLP_THREADS out of range [1, 8192]");
  }
}

StepFn load_step(const std::string& path, const char* what) {
  try {
    return parse_step_fn(slurp(path));
  } catch (const validation_error& e) {
    throw validation_error(std::string(what) + ": " + e.what());
  }
}

std::string phi_trace_csv(const PhiSolution& sol) {
  std::string csv = "t,phi\n";
  for (std::size_t i = 0; i < sol.t.size(); ++i) {
    csv += fmt(sol.t[i]);
    csv += ',';
    csv += fmt(sol.phi[i]);
    csv += '\n';
  }
  return csv;
}

std::vector<double> interior_seeds(const StepFn& f, const StepFn& p, const IntervalUnion& c) {
  std::vector<double> seeds;
  auto add = [&seeds](const std::vector<double>& xs) {
    for (double x : xs) {
      if (x > 0.0 && x < 1.0) seeds.push_back(x);
    }
  };
  add(f.breakpoints());
  add(p.breakpoints());
  add(c.endpoints());
  return seeds;
}

struct Args {
  std::string f_path;
  std::string p_path;
  std::string x_path;
  std::string m_path;
  std::string basis_path;
  std::string verify_path;
  std::string trace_path;
  std::string out_path;
  int grid = 0;
  int stages = 0;
  int k = 1;
  long long count = 0;
  double eps = 0.05;
  std::uint64_t seed = 0;
  int samples = 10000;
  int refine = 100;
};

int cmd_norm(const Args& a, std::ostream& out) {
  StepFn f = load_step(a.f_path, "--f");
  StepFn p = load_step(a.p_path, "--p");
  PhiSolution sol = a.grid > 0
                        ? phi_numeric(SampledFn::from_step(f, std::size_t(a.grid)),
                                      SampledFn::from_step(p, std::size_t(a.grid)))
                        : phi_step(f, p);
  out << fmt(sol.terminal()) << "\n";
  if (!a.trace_path.empty()) spill(a.trace_path, phi_trace_csv(sol));
  return 0;
}

int cmd_seqnorm(const Args& a, std::ostream& out) {
  SeqInput in = parse_seq_input(slurp(a.x_path));
  double norm = 0.0;
  if (in.sparse) {
    RationalEnum r;
    norm = sparse_norm(in.entries, r, Nesting::kLeft);
  } else {
    norm = ladder_norm(in.values, ExponentLadder{in.connectors}, Nesting::kLeft);
  }
  out << fmt(norm) << "\n";
  return 0;
}

int cmd_doublenorm(const Args& a, std::ostream& out) {
  MatrixInput in = parse_matrix_input(slurp(a.m_path));
  out << fmt(double_norm(in.matrix, in.outer, in.inner, Nesting::kLeft)) << "\n";
  return 0;
}

int cmd_seminorm(const Args& a, std::ostream& out) {
  StepFn f = load_step(a.f_path, "--f");
  StepFn p = load_step(a.p_path, "--p");
  std::vector<IntervalUnion> lusin = lusin_sets(p, a.stages);
  std::vector<std::pair<IntervalUnion, std::vector<double>>> schedule;
  for (int n = 1; n <= a.stages; ++n) {
    const IntervalUnion& c = lusin[std::size_t(n - 1)];
    FinitePartition part = refine_partition(interior_seeds(f, p, c), n);
    schedule.emplace_back(c, part.cuts);
  }
  std::vector<SeminormStage> vals = seminorm_converge(f, p, schedule);
  double lp = lp_norm(f, p);
  std::string csv = "stage,n_value,nprime_value,lp_norm,gap\n";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    csv += std::to_string(i + 1);
    csv += ',';
    csv += fmt(vals[i].n_value);
    csv += ',';
    csv += fmt(vals[i].nprime_value);
    csv += ',';
    csv += fmt(lp);
    csv += ',';
    csv += fmt(lp - vals[i].n_value);
    csv += '\n';
  }
  if (a.out_path.empty()) {
    out << csv;
  } else {
    spill(a.out_path, csv);
  }
  return 0;
}

int cmd_embed(const Args& a, std::ostream& out) {
  StepFn f = load_step(a.f_path, "--f");
  StepFn p = load_step(a.p_path, "--p");
  RationalEnum r;
  EmbedResult res = embed(f, p, a.stages, EmbedConfig{}, r);
  std::string csv = "n,alpha,lusin_measure,atoms,stage_norm,lp_norm,quasi_ratio\n";
  for (const StageState& st : res.trace) {
    csv += std::to_string(st.n);
    csv += ',';
    csv += fmt(st.alpha);
    csv += ',';
    csv += fmt(st.lusin_measure);
    csv += ',';
    csv += std::to_string(st.atom_count);
    csv += ',';
    csv += fmt(st.stage_norm);
    csv += ',';
    csv += fmt(st.full_norm);
    csv += ',';
    csv += fmt(st.quasi_ratio);
    csv += '\n';
  }
  if (a.trace_path.empty()) {
    out << csv;
  } else {
    spill(a.trace_path, csv);
    auto [limit, width] = up_norm(res.element);
    out << "limit " << fmt(limit) << " width " << fmt(width) << "\n";
  }
  return 0;
}

int cmd_doubleembed(const Args& a, std::ostream& out) {
  MatrixInput in = parse_matrix_input(slurp(a.m_path));
  RationalEnum r;
  DoubleEmbedResult res = double_embed(in.matrix, in.outer, in.inner, a.k, r);
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "double-embedding";
  j["k"] = res.k;
  j["exact_norm"] = res.exact_norm;
  j["embedded_norm"] = res.embedded_norm;
  j["ratio"] = res.ratio;
  j["bound"] = res.bound;
  j["delta"] = res.delta;
  auto positions = [](const AxisPlacement& axis) {
    std::vector<std::string> out_pos;
    for (const BigInt& b : axis.positions) out_pos.push_back(b.str());
    return out_pos;
  };
  auto connectors = [](const AxisPlacement& axis) {
    std::vector<std::string> out_con;
    for (const Rational& q : axis.connectors) out_con.push_back(q.str());
    return out_con;
  };
  j["row_positions"] = positions(res.rows);
  j["row_connectors"] = connectors(res.rows);
  j["col_positions"] = positions(res.cols);
  j["col_connectors"] = connectors(res.cols);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_certify(const Args& a, std::ostream& out, std::ostream& err) {
  RationalEnum r;
  if (!a.verify_path.empty()) {
    EmbeddingCertificate cert = parse_certificate(slurp(a.verify_path));
    if (!cert.verified) {
      throw validation_error("certificate: verified flag is false; nothing to re-check");
    }
    DistortionEstimate est = reverify(cert, r);
    double allowed = 1.0 + cert.eps + 1e-2;
    if (!(est.distortion <= allowed)) {
      err << "re-verification failed: distortion " << fmt(est.distortion) << " exceeds "
          << fmt(allowed) << "\n";
      return 2;
    }
    out << "verified: stage " << cert.stage << " distortion " << fmt(cert.distortion)
        << " recheck " << fmt(est.distortion) << " allowed " << fmt(allowed) << "\n";
    return 0;
  }
  std::vector<StepFn> basis = parse_basis(slurp(a.basis_path));
  StepFn p = load_step(a.p_path, "--p");
  CertifyOptions opts;
  opts.eps = a.eps;
  opts.max_stages = a.stages > 0 ? a.stages : 40;
  opts.distortion.seed = a.seed;
  opts.distortion.samples = a.samples;
  opts.distortion.refine_iters = a.refine;
  EmbeddingCertificate cert = finite_repr_certificate(basis, p, opts, EmbedConfig{}, r);
  std::string text = serialize_certificate(cert);
  if (a.out_path.empty()) {
    out << text;
  } else {
    spill(a.out_path, text);
    out << "certificate: stage " << cert.stage << " distortion " << fmt(cert.distortion)
        << "\n";
  }
  return 0;
}

int cmd_enum(const Args& a, std::ostream& out) {
  RationalEnum r;
  std::string csv = "index,value\n";
  for (long long i = 1; i <= a.count; ++i) {
    csv += std::to_string(i);
    csv += ',';
    csv += r.at(BigInt(i)).str();
    csv += '\n';
  }
  out << csv;
  return 0;
}

int run_impl(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  validate_threads_env();

  CLI::App app{
      "varlp: varying-exponent Lebesgue norms, nested sequence norms, and\n"
      "constructive embedding pipelines.  JSON in, CSV/JSON out.\n"
      "Exit codes: 0 ok, 1 property failure, 2 validation error, 3 budget\n"
      "exceeded.  VARLP_THREADS caps internal parallelism (reserved)."};
  app.require_subcommand(1);
  Args a;

  CLI::App* norm = app.add_subcommand(
      "norm", "Varying-exponent function-space norm of a step function");
  norm->add_option("--f", a.f_path, "StepFn JSON for f")->required()->check(CLI::ExistingFile);
  norm->add_option("--p", a.p_path, "StepFn JSON for the exponent")
      ->required()
      ->check(CLI::ExistingFile);
  norm->add_option("--grid", a.grid,
                   "Use midpoint-sampled propagation at resolution N instead of the exact "
                   "breakpoint propagation")
      ->check(CLI::Range(1, 10000000));
  norm->add_option("--trace", a.trace_path, "Write the (t, phi) path as CSV to this file");

  CLI::App* seqnorm = app.add_subcommand(
      "seqnorm", "Nested sequence norm of a dense or enumeration-indexed vector");
  seqnorm->add_option("--x", a.x_path, "Vector JSON")->required()->check(CLI::ExistingFile);

  CLI::App* doublenorm =
      app.add_subcommand("doublenorm", "Two-phase nested norm of a real matrix");
  doublenorm->add_option("--m", a.m_path, "Matrix JSON with inner/outer connector lists")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* seminorm = app.add_subcommand(
      "seminorm", "Simple-seminorm brackets converging to the function norm");
  seminorm->add_option("--f", a.f_path, "StepFn JSON for f")->required()->check(CLI::ExistingFile);
  seminorm->add_option("--p", a.p_path, "StepFn JSON for the exponent")
      ->required()
      ->check(CLI::ExistingFile);
  seminorm->add_option("--stages", a.stages, "Number of refinement stages")
      ->required()
      ->check(CLI::Range(1, 24));
  seminorm->add_option("--out", a.out_path, "Write the CSV to this file instead of stdout");

  CLI::App* embed = app.add_subcommand(
      "embed", "Stagewise almost-isometric embedding of a function into the sequence space");
  embed->add_option("--f", a.f_path, "StepFn JSON for f")->required()->check(CLI::ExistingFile);
  embed->add_option("--p", a.p_path, "StepFn JSON for the exponent")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--stages", a.stages, "Number of stages")
      ->required()
      ->check(CLI::Range(1, 200));
  embed->add_option("--trace", a.trace_path,
                    "Write the per-stage CSV to this file; stdout then reports the limit");

  CLI::App* doubleembed = app.add_subcommand(
      "doubleembed", "Bracketed embedding of a matrix block into the sequence space");
  doubleembed->add_option("--matrix", a.m_path, "Matrix JSON with inner/outer connector lists")
      ->required()
      ->check(CLI::ExistingFile);
  doubleembed->add_option("--k", a.k, "Leading block size")->required()->check(CLI::Range(1, 64));

  CLI::App* certify = app.add_subcommand(
      "certify", "Finite-representability certificate for a basis of step functions");
  certify->add_option("--basis", a.basis_path, "Basis JSON (array of step functions)")
      ->check(CLI::ExistingFile);
  certify->add_option("--p", a.p_path, "StepFn JSON for the exponent")->check(CLI::ExistingFile);
  certify->add_option("--eps", a.eps, "Distortion target 1 + eps")
      ->check(CLI::Range(1e-9, 1.0));
  certify->add_option("--seed", a.seed, "Sampling seed (required when searching)");
  certify->add_option("--stages", a.stages, "Stage budget (default 40)")
      ->check(CLI::Range(1, 200));
  certify->add_option("--samples", a.samples, "Sphere samples per stage (default 10000)")
      ->check(CLI::Range(1, 10000000));
  certify->add_option("--refine", a.refine, "Coordinate-ascent steps (default 100)")
      ->check(CLI::Range(0, 100000));
  certify->add_option("--out", a.out_path, "Write the certificate JSON to this file");
  certify->add_option("--verify", a.verify_path, "Re-check an existing certificate JSON")
      ->check(CLI::ExistingFile);

  CLI::App* enum_cmd =
      app.add_subcommand("enum", "Print the exponent enumeration as index,value CSV");
  enum_cmd->add_option("--count", a.count, "Number of leading entries")
      ->required()
      ->check(CLI::Range(1LL, 1000000LL));

  CLI::App* props = app.add_subcommand(
      "props", "Run the cross-module invariant suite (nonzero exit on failure)");
  props->add_option("--seed", a.seed, "Seed for the randomized properties (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (norm->parsed()) return cmd_norm(a, out);
  if (seqnorm->parsed()) return cmd_seqnorm(a, out);
  if (doublenorm->parsed()) return cmd_doublenorm(a, out);
  if (seminorm->parsed()) return cmd_seminorm(a, out);
  if (embed->parsed()) return cmd_embed(a, out);
  if (doubleembed->parsed()) return cmd_doubleembed(a, out);
  if (certify->parsed()) {
    if (a.verify_path.empty()) {
      if (a.basis_path.empty() || a.p_path.empty()) {
        throw validation_error("certify: --basis and --p are required (or use --verify)");
      }
      if (certify->count("--seed") == 0) {
        throw validation_error("certify: --seed is required for the stochastic search");
      }
    } else if (!a.basis_path.empty() || !a.p_path.empty()) {
      throw validation_error("certify: --verify excludes --basis/--p");
    }
    return cmd_certify(a, out, err);
  }
  if (enum_cmd->parsed()) return cmd_enum(a, out);
  if (props->parsed()) {
    std::uint64_t seed = props->count("--seed") ? a.seed : 1;
    return run_props(out, seed) ? 0 : 1;
  }
  return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(argc, argv, out, err);
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace varlp::cli
