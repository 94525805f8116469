// Command-line driver: order/equivalence checks for contractive matrices
// and functions, pointwise witness profiles, linear-fractional transport
// certificates, and scripted demonstrations.
//
// Exit codes: 0 supported/success, 1 refusal/refuted, 2 inconclusive or a
// failed certificate, 3 input error (malformed JSON, bad flags, shapes).
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <schur/json_io.hpp>
#include <schur/numeric.hpp>
#include <schur/preorder.hpp>
#include <schur/profile.hpp>
#include <schur/redheffer.hpp>
#include <schur/schur_function.hpp>
#include <schur/types.hpp>

#include "demos.hpp"

namespace {

using nlohmann::json;
using namespace schur;

constexpr const char* kToolName = "schur-preorder";
constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kRefuted = 1, kInconclusive = 2, kInputError = 3 };

struct CliConfig {
  Tolerances tol;
  SamplingGrid grid = SamplingGrid::standard();
  std::string format = "human";
  unsigned seed = 0;  // reserved for randomized extensions; commands are deterministic
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt6(cd z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- input parsing ---------------------------------------------------------

// Inline JSON is recognized by its first character; anything else is read as
// a file path.
std::string read_input_text(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read input file: " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A bare nested array is a matrix literal; entries are numbers (real) or
// [re, im] pairs.
Matrix matrix_from_literal(const json& arr) {
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument("matrix literal must be a non-empty array of row arrays");
  const Index rows = Index(arr.size());
  if (!arr[0].is_array() || arr[0].empty())
    throw std::invalid_argument("matrix literal rows must be non-empty arrays");
  const Index cols = Index(arr[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = arr[std::size_t(i)];
    if (!row.is_array() || Index(row.size()) != cols)
      throw std::invalid_argument("matrix literal rows must share one length");
    for (Index j = 0; j < cols; ++j) {
      const auto& e = row[std::size_t(j)];
      if (e.is_number()) {
        m(i, j) = cd(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, j) = cd(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument(
            "matrix literal entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

// Accepted input forms: a function tree {"kind": ...}, a matrix object
// {"rows", "cols", "data"}, a bare matrix literal [[...]], any of those in a
// file, or the shorthand "<literal>-const" for a constant function, e.g.
// [[0.5]]-const.
SchurFunction parse_function_arg(const std::string& arg) {
  static const std::string suffix = "-const";
  if (arg.size() > suffix.size() &&
      arg.compare(arg.size() - suffix.size(), suffix.size(), suffix) == 0) {
    const json j = json::parse(arg.substr(0, arg.size() - suffix.size()));
    return constant_fn(matrix_from_literal(j));
  }
  const json j = json::parse(read_input_text(arg));
  if (j.is_array()) return constant_fn(matrix_from_literal(j));
  if (j.is_object() && j.contains("kind")) return function_from_json(j);
  if (j.is_object() && j.contains("rows")) return constant_fn(matrix_from_json(j));
  throw std::invalid_argument(
      "input must be a function tree {\"kind\": ...}, a matrix object "
      "{\"rows\", \"cols\", \"data\"}, or a matrix literal [[...]]");
}

bool is_constant(const SchurFunction& f) { return f.kind() == "const"; }

// ---- check -----------------------------------------------------------------

int exit_for(FnVerdict v) {
  switch (v) {
    case FnVerdict::supported: return kOk;
    case FnVerdict::refuted_diverging:
    case FnVerdict::refuted_pointwise: return kRefuted;
    case FnVerdict::inconclusive: return kInconclusive;
  }
  return kInputError;
}

void print_bounds_line(const json& bounds) {
  std::string line = "bounds:";
  for (const auto& b : bounds)
    line += " " + b.at("name").get<std::string>() +
            (b.at("pass").get<bool>() ? " PASS" : " FAIL");
  std::cout << line << "\n";
}

int check_constant_preceq(const CliConfig& cfg, const Matrix& a, const Matrix& b) {
  const auto outcome = check_preceq(a, b, cfg.tol);
  if (cfg.format == "json") {
    json rep{{"mode", "preceq"}, {"input", "constant"}};
    rep["result"] = outcome.ok() ? "supported" : "refused";
    if (outcome.ok()) rep["witness"] = witness_to_json(*outcome.witness);
    if (outcome.refusal) rep["refusal"] = refusal_to_json(*outcome.refusal);
    emit_json(rep);
    return outcome.ok() ? kOk : kRefuted;
  }
  std::cout << "check preceq (constant " << a.rows() << "x" << a.cols() << ")\n";
  if (!outcome.ok()) {
    std::cout << "result: refused\nreason: " << outcome.refusal->reason
              << "\nresidual: " << fmt6(outcome.refusal->residual) << "\n";
    return kRefuted;
  }
  const auto& w = *outcome.witness;
  std::cout << "result: supported\n";
  std::cout << "|x| = " << fmt6(op_norm(w.x)) << ", |y| = " << fmt6(op_norm(w.y))
            << ", r = " << fmt6(w.r) << "\n";
  if (w.x.rows() == 1 && w.x.cols() == 1)
    std::cout << "x entry: " << fmt6(w.x_full()(0, 0)) << "\n";
  std::cout << "residuals: x " << fmt6(w.residual_x) << ", y " << fmt6(w.residual_y)
            << "\n";
  std::cout << "min eig(2 Re y - I): " << fmt6(w.min_eig_2re_y_minus_i) << "\n";
  print_bounds_line(witness_to_json(w)["bounds"]);
  return kOk;
}

int check_constant_equiv(const CliConfig& cfg, const Matrix& a, const Matrix& b) {
  const auto outcome = check_equiv(a, b, cfg.tol);
  if (cfg.format == "json") {
    json rep{{"mode", "equiv"}, {"input", "constant"}};
    rep["result"] = outcome.ok() ? "supported" : "refused";
    if (outcome.ok()) rep["witness"] = equiv_witness_to_json(*outcome.witness);
    if (outcome.refusal) rep["refusal"] = refusal_to_json(*outcome.refusal);
    emit_json(rep);
    return outcome.ok() ? kOk : kRefuted;
  }
  std::cout << "check equiv (constant " << a.rows() << "x" << a.cols() << ")\n";
  if (!outcome.ok()) {
    std::cout << "result: refused\nreason: " << outcome.refusal->reason
              << "\nresidual: " << fmt6(outcome.refusal->residual) << "\n";
    return kRefuted;
  }
  const auto& w = *outcome.witness;
  std::cout << "result: supported\n";
  std::cout << "|x~| = " << fmt6(op_norm(w.x_tilde)) << ", |y~| = "
            << fmt6(op_norm(w.y_tilde)) << "\n";
  std::cout << "residuals: x~ " << fmt6(w.residual_x_tilde) << ", y~ "
            << fmt6(w.residual_y_tilde) << "\n";
  std::cout << "forward r = " << fmt6(w.forward.r) << ", backward r = "
            << fmt6(w.backward.r) << "\n";
  print_bounds_line(equiv_witness_to_json(w)["bounds"]);
  return kOk;
}

int check_function_preceq(const CliConfig& cfg, const SchurFunction& f,
                          const SchurFunction& g) {
  const auto res = classify_preceq_infty(f, g, cfg.grid, cfg.tol);
  if (cfg.format == "json") {
    json rep{{"mode", "preceq"}, {"input", "function"}};
    rep["result"] = to_string(res.verdict);
    rep["report"] = preceq_result_to_json(res);
    emit_json(rep);
    return exit_for(res.verdict);
  }
  std::cout << "check preceq (function classification)\n";
  std::cout << "result: " << to_string(res.verdict) << "\n";
  std::cout << "profile: " << to_string(res.profile.classification) << ", sup |Q| = "
            << fmt6(res.profile.sup_q) << " over " << res.profile.points.size()
            << " points\n";
  if (res.profile.refusal_lambda)
    std::cout << "first refusal at lambda = " << fmt6(*res.profile.refusal_lambda)
              << ": " << res.profile.refusal_reason << "\n";
  if (res.corroboration.ran)
    std::cout << "segment corroboration: r = " << fmt6(res.corroboration.r_used)
              << ", max norm " << fmt6(res.corroboration.max_combo_norm) << ", "
              << (res.corroboration.pass ? "pass" : "fail") << "\n";
  return exit_for(res.verdict);
}

int check_function_equiv(const CliConfig& cfg, const SchurFunction& f,
                         const SchurFunction& g) {
  const auto res = classify_equiv_infty(f, g, cfg.grid, cfg.tol);
  if (cfg.format == "json") {
    json rep{{"mode", "equiv"}, {"input", "function"}};
    rep["result"] = to_string(res.verdict);
    rep["report"] = equiv_result_to_json(res);
    emit_json(rep);
    return exit_for(res.verdict);
  }
  std::cout << "check equiv (function classification)\n";
  std::cout << "result: " << to_string(res.verdict) << "\n";
  std::cout << "forward: " << to_string(res.forward.verdict) << " (sup |Q| = "
            << fmt6(res.forward.profile.sup_q) << "), backward: "
            << to_string(res.backward.verdict) << " (sup |Q| = "
            << fmt6(res.backward.profile.sup_q) << ")\n";
  std::cout << "cross witness: sup |Q~| = " << fmt6(res.sup_q_tilde) << ", bounds "
            << (res.cross_bounds_pass ? "pass" : "fail") << "\n";
  return exit_for(res.verdict);
}

int cmd_check(const CliConfig& cfg, const std::string& mode, const std::string& a_arg,
              const std::string& b_arg) {
  const SchurFunction f = parse_function_arg(a_arg);
  const SchurFunction g = parse_function_arg(b_arg);
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("check inputs must share their shape");
  const bool constant_inputs = is_constant(f) && is_constant(g);
  if (mode == "preceq") {
    if (constant_inputs) return check_constant_preceq(cfg, f.eval(0.0), g.eval(0.0));
    return check_function_preceq(cfg, f, g);
  }
  if (constant_inputs) return check_constant_equiv(cfg, f.eval(0.0), g.eval(0.0));
  return check_function_equiv(cfg, f, g);
}

// ---- profile ----------------------------------------------------------------

int cmd_profile(const CliConfig& cfg, const std::string& f_arg, const std::string& g_arg,
                const std::string& csv_path) {
  const SchurFunction f = parse_function_arg(f_arg);
  const SchurFunction g = parse_function_arg(g_arg);
  const auto profile = pointwise_witness_profile(f, g, cfg.grid, cfg.tol);
  const std::string csv = profile_to_csv(profile);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write csv file: " + csv_path);
    out << csv;
    if (!out.good()) throw std::runtime_error("failed writing csv file: " + csv_path);
  }

  if (cfg.format == "csv") {
    std::cout << csv;
  } else if (cfg.format == "json") {
    emit_json(profile_to_json(profile));
  } else {
    std::cout << "profile over " << profile.points.size() << " points\n";
    std::cout << "sup |Q| = " << fmt6(profile.sup_q) << ", sup |R| = "
              << fmt6(profile.sup_r) << ", inf r(lambda) = "
              << fmt6(profile.inf_r_lambda) << "\n";
    std::cout << "classification: " << to_string(profile.classification) << "\n";
    if (profile.refusal_lambda)
      std::cout << "first refusal at lambda = " << fmt6(*profile.refusal_lambda) << ": "
                << profile.refusal_reason << "\n";
    if (!csv_path.empty()) std::cout << "csv written to " << csv_path << "\n";
  }
  switch (profile.classification) {
    case ProfileClass::refused_pointwise: return kRefuted;
    case ProfileClass::inconclusive: return kInconclusive;
    default: return kOk;
  }
}

// ---- redheffer ---------------------------------------------------------------

int cmd_redheffer(const CliConfig& cfg, const std::string& phi_arg, const std::string& f_arg,
                  const std::string& g_arg, const std::string& mode) {
  const json jphi = json::parse(read_input_text(phi_arg));
  const RedhefferCoefficients phi = coefficients_from_json(jphi);
  const SchurFunction f = parse_function_arg(f_arg);

  if (g_arg.empty()) {
    const double margin = domain_margin(phi, f);
    const SchurFunction image = apply(phi, f, cfg.tol);  // throws if outside the domain
    const double sup = sup_norm_estimate(image, cfg.grid);
    if (cfg.format == "json") {
      emit_json(json{{"applied", true},
                     {"domain_margin", margin},
                     {"rows", image.rows()},
                     {"cols", image.cols()},
                     {"sup_estimate", sup},
                     {"extendable", image.extendable()}});
    } else {
      std::cout << "applied coefficients to the input\n";
      std::cout << "domain margin: " << fmt6(margin) << "\n";
      std::cout << "image shape: " << image.rows() << "x" << image.cols()
                << ", sup estimate " << fmt6(sup) << "\n";
    }
    return kOk;
  }

  const SchurFunction g = parse_function_arg(g_arg);
  const TransportOutcome outcome = (mode == "preceq")
                                       ? transport_preorder(phi, f, g, cfg.grid, cfg.tol)
                                       : transport_equiv(phi, f, g, cfg.grid, cfg.tol);
  if (!outcome.ok()) {
    if (cfg.format == "json") {
      emit_json(json{{"mode", mode}, {"result", "refused"},
                     {"refusal", refusal_to_json(*outcome.refusal)}});
    } else {
      std::cout << "transport (" << mode << ")\nresult: refused\nreason: "
                << outcome.refusal->reason << "\n";
    }
    return kRefuted;
  }
  const auto& cert = *outcome.certificate;
  if (cfg.format == "json") {
    json rep{{"mode", mode}, {"result", cert.pass ? "certified" : "failed"}};
    rep["certificate"] = certificate_to_json(cert);
    emit_json(rep);
  } else {
    std::cout << "transport (" << mode << ")\n";
    std::cout << "result: " << (cert.pass ? "certified" : "failed") << "\n";
    std::cout << "points: " << cert.points.size() << ", max residual "
              << fmt6(cert.max_residual) << "\n";
    std::cout << "sup transported = " << fmt6(cert.sup_transported)
              << ", input sup = " << fmt6(cert.input_witness_sup) << "\n";
    if (mode == "preceq")
      std::cout << "left factor sup = " << fmt6(cert.sup_n) << "\n";
  }
  return cert.pass ? kOk : kInconclusive;
}

// ---- demo --------------------------------------------------------------------

int cmd_demo(const CliConfig& cfg, const std::string& name,
             const std::vector<double>& deltas) {
  if (!demos::known(name)) {
    std::ostringstream os;
    os << "unknown demo \"" << name << "\"; valid names:";
    for (const auto& n : demos::names()) os << " " << n;
    std::cerr << os.str() << "\n";
    return kInputError;
  }
  const auto rep = demos::run(name, deltas, cfg.tol);
  if (cfg.format == "json") {
    json claims = json::array();
    for (const auto& c : rep.claims)
      claims.push_back(json{{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
    emit_json(json{{"demo", rep.name},
                   {"summary", rep.summary},
                   {"claims", claims},
                   {"notes", rep.notes},
                   {"pass", rep.all_pass()}});
  } else {
    std::cout << "demo " << rep.name << ": " << rep.summary << "\n";
    for (const auto& c : rep.claims) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.label;
      if (!c.detail.empty()) std::cout << " -- " << c.detail;
      std::cout << "\n";
    }
    for (const auto& n : rep.notes) std::cout << n << "\n";
    std::cout << "result: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  }
  return rep.all_pass() ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  std::vector<double> radii;

  CLI::App app{"order and equivalence certificates for contractive matrices and functions"};
  app.require_subcommand(1);
  app.add_option("--tol-psd", cfg.tol.tol_psd, "positive-semidefinite slack");
  app.add_option("--tol-rank", cfg.tol.tol_rank, "defect rank cutoff");
  app.add_option("--tol-residual", cfg.tol.tol_residual, "residual acceptance threshold");
  app.add_option("--radii", radii, "interior sweep radii (comma separated)")
      ->delimiter(',');
  app.add_option("--angles", cfg.grid.angles, "samples per interior circle");
  app.add_option("--boundary-angles", cfg.grid.boundary_angles,
                 "samples on the boundary circle");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--seed", cfg.seed,
                 "seed for randomized extensions (current commands are deterministic)");

  auto* check = app.add_subcommand("check", "decide order or equivalence for a pair");
  std::string check_mode, in_a, in_b, in_f, in_g;
  check->add_option("--mode", check_mode, "preceq or equiv")
      ->required()
      ->check(CLI::IsMember({"preceq", "equiv"}));
  check->add_option("--a", in_a, "first input (alias of --f)");
  check->add_option("--b", in_b, "second input (alias of --g)");
  check->add_option("--f", in_f, "first input");
  check->add_option("--g", in_g, "second input");

  auto* profile = app.add_subcommand("profile", "pointwise witness sweep over the grid");
  std::string pf, pg, csv_path;
  profile->add_option("--f", pf, "dominated input")->required();
  profile->add_option("--g", pg, "dominating input")->required();
  profile->add_option("--csv", csv_path, "write the sweep rows to this file");

  auto* red = app.add_subcommand(
      "redheffer", "apply coefficient blocks; with --g, build a transport certificate");
  std::string rphi, rf, rg, rmode = "equiv";
  red->add_option("--phi", rphi, "coefficient blocks (JSON object of four functions)")
      ->required();
  red->add_option("--f", rf, "input function")->required();
  red->add_option("--g", rg, "second input for witness transport");
  red->add_option("--mode", rmode, "transport route: preceq or equiv")
      ->check(CLI::IsMember({"preceq", "equiv"}));

  auto* demo = app.add_subcommand("demo", "run a scripted demonstration");
  std::string demo_name;
  std::vector<double> demo_deltas;
  demo->add_option("name", demo_name, "demonstration name")->required();
  demo->add_option("--deltas", demo_deltas,
                   "mode parameters for the stacked-mode demo (comma separated)")
      ->delimiter(',');

  auto* version = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    cfg.tol.validate();
    if (!radii.empty()) {
      for (double r : radii)
        if (!(r > 0.0) || !(r < 1.0))
          throw std::invalid_argument("sweep radii must lie strictly between 0 and 1");
      cfg.grid.radii = radii;
    }
    if (cfg.grid.angles < 1 || cfg.grid.boundary_angles < 1)
      throw std::invalid_argument("angle counts must be positive");
    if (cfg.format == "csv" && !profile->parsed())
      throw std::invalid_argument("csv format applies to the profile command only");

    if (version->parsed()) {
      if (cfg.format == "json")
        emit_json(nlohmann::json{{"name", kToolName}, {"version", kToolVersion}});
      else
        std::cout << kToolName << " " << kToolVersion << "\n";
      return kOk;
    }
    if (check->parsed()) {
      const std::string a = !in_a.empty() ? in_a : in_f;
      const std::string b = !in_b.empty() ? in_b : in_g;
      if (a.empty() || b.empty())
        throw std::invalid_argument("check requires two inputs: --a/--f and --b/--g");
      return cmd_check(cfg, check_mode, a, b);
    }
    if (profile->parsed()) return cmd_profile(cfg, pf, pg, csv_path);
    if (red->parsed()) return cmd_redheffer(cfg, rphi, rf, rg, rmode);
    if (demo->parsed()) return cmd_demo(cfg, demo_name, demo_deltas);
    throw std::invalid_argument("no command given");
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
