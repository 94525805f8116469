// JSON and CSV wire formats for matrices, function trees, witnesses, and
// sweep reports.
#include <schur/json_io.hpp>

#include <cstdio>
#include <stdexcept>
#include <utility>
#include <variant>

namespace schur {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string(context) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double require_number(const json& j, const char* context) {
  if (!j.is_number())
    throw std::invalid_argument(std::string(context) + ": expected a number");
  return j.get<double>();
}

// Internal bound labels -> fixed wire tokens.
std::string wire_bound_name(const std::string& name) {
  if (name == "x_vs_y") return "eq1.1a";
  if (name == "y_vs_x") return "eq1.1b";
  if (name == "x_vs_radius") return "eq1.2a";
  if (name == "y_vs_radius") return "eq1.2b";
  if (name == "radius_vs_y") return "eq1.3";
  return name;
}

json bounds_to_json(const BoundReport& bounds) {
  json out = json::array();
  for (const BoundEntry& e : bounds.entries)
    out.push_back(json{{"name", wire_bound_name(e.name)},
                       {"claimed", e.claimed},
                       {"achieved", e.achieved},
                       {"pass", e.pass}});
  return out;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json point_row(const ProfilePoint& p) {
  return json{{"radius", p.radius},
              {"angle", p.angle},
              {"norm_q", p.norm_q},
              {"norm_r", p.norm_r},
              {"r_lambda", p.r_lambda},
              {"residual", std::max(p.residual_x, p.residual_y)}};
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const char* ctx = "matrix";
  const json& jr = require_field(j, "rows", ctx);
  const json& jc = require_field(j, "cols", ctx);
  const json& jd = require_field(j, "data", ctx);
  if (!jr.is_number_integer() || !jc.is_number_integer())
    throw std::invalid_argument("matrix: rows/cols must be integers");
  const Index rows = jr.get<Index>();
  const Index cols = jc.get<Index>();
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative shape");
  if (!jd.is_array() || Index(jd.size()) != rows * cols)
    throw std::invalid_argument("matrix: data length must equal rows*cols");
  Matrix m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c, ++k) {
      const json& e = jd.at(size_t(k));
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix: each entry must be an [re, im] pair");
      m(i, c) = cd(require_number(e.at(0), "matrix entry"),
                   require_number(e.at(1), "matrix entry"));
    }
  }
  return m;
}

nlohmann::json function_to_json(const SchurFunction& f) {
  if (!f.valid()) throw std::invalid_argument("function: empty");
  const detail::Node& n = f.node();
  if (const auto* c = std::get_if<detail::ConstantNode>(&n.v))
    return json{{"kind", "const"}, {"value", matrix_to_json(c->value)}};
  if (const auto* p = std::get_if<detail::PolyNode>(&n.v)) {
    json coeffs = json::array();
    for (const Matrix& m : p->coeffs) coeffs.push_back(matrix_to_json(m));
    return json{{"kind", "poly"}, {"coeffs", std::move(coeffs)}};
  }
  if (const auto* b = std::get_if<detail::BlaschkeNode>(&n.v))
    return json{{"kind", "blaschke"},
                {"omega", json::array({b->omega.real(), b->omega.imag()})},
                {"alpha", b->alpha}};
  if (const auto* d = std::get_if<detail::DiagNode>(&n.v)) {
    json entries = json::array();
    for (const SchurFunction& g : d->blocks) entries.push_back(function_to_json(g));
    return json{{"kind", "diag"}, {"entries", std::move(entries)}};
  }
  if (const auto* blk = std::get_if<detail::BlockNode>(&n.v)) {
    json rows = json::array(
        {json::array({function_to_json(blk->parts[0]), function_to_json(blk->parts[1])}),
         json::array({function_to_json(blk->parts[2]), function_to_json(blk->parts[3])})});
    return json{{"kind", "block2x2"}, {"blocks", std::move(rows)}};
  }
  if (const auto* r = std::get_if<detail::RealizationNode>(&n.v))
    return json{{"kind", "realization"},
                {"a", matrix_to_json(r->a)},
                {"b", matrix_to_json(r->b)},
                {"c", matrix_to_json(r->c)},
                {"d", matrix_to_json(r->d)}};
  throw std::invalid_argument(
      "function: linear-fractional composites have no wire form; serialize the "
      "coefficients and the input separately");
}

SchurFunction function_from_json(const nlohmann::json& j) {
  const std::string kind = require_field(j, "kind", "function").get<std::string>();
  if (kind == "const") return constant_fn(matrix_from_json(require_field(j, "value", "const")));
  if (kind == "poly") {
    const json& jc = require_field(j, "coeffs", "poly");
    if (!jc.is_array()) throw std::invalid_argument("poly: coeffs must be an array");
    std::vector<Matrix> coeffs;
    for (const json& e : jc) coeffs.push_back(matrix_from_json(e));
    return poly_fn(coeffs);
  }
  if (kind == "blaschke") {
    const json& jo = require_field(j, "omega", "blaschke");
    if (!jo.is_array() || jo.size() != 2)
      throw std::invalid_argument("blaschke: omega must be an [re, im] pair");
    const double alpha = require_number(require_field(j, "alpha", "blaschke"), "blaschke alpha");
    return blaschke_fn(cd(require_number(jo.at(0), "blaschke omega"),
                          require_number(jo.at(1), "blaschke omega")),
                       alpha);
  }
  if (kind == "diag") {
    const json& je = require_field(j, "entries", "diag");
    if (!je.is_array()) throw std::invalid_argument("diag: entries must be an array");
    std::vector<SchurFunction> blocks;
    for (const json& e : je) blocks.push_back(function_from_json(e));
    return diag_fn(blocks);
  }
  if (kind == "block2x2") {
    const json& jb = require_field(j, "blocks", "block2x2");
    if (!jb.is_array() || jb.size() != 2 || !jb.at(0).is_array() || jb.at(0).size() != 2 ||
        !jb.at(1).is_array() || jb.at(1).size() != 2)
      throw std::invalid_argument("block2x2: blocks must be a 2x2 nested array");
    return block2x2_fn(function_from_json(jb.at(0).at(0)), function_from_json(jb.at(0).at(1)),
                       function_from_json(jb.at(1).at(0)), function_from_json(jb.at(1).at(1)));
  }
  if (kind == "realization")
    return realization_fn(matrix_from_json(require_field(j, "a", "realization")),
                          matrix_from_json(require_field(j, "b", "realization")),
                          matrix_from_json(require_field(j, "c", "realization")),
                          matrix_from_json(require_field(j, "d", "realization")));
  throw std::invalid_argument(
      "function: unknown kind \"" + kind +
      "\" (valid: const, poly, blaschke, diag, block2x2, realization)");
}

nlohmann::json witness_to_json(const PreorderWitness& w) {
  return json{{"x", matrix_to_json(w.x)},
              {"y", matrix_to_json(w.y)},
              {"r", w.r},
              {"residuals", json{{"x", w.residual_x}, {"y", w.residual_y}}},
              {"min_eig_2re_y_minus_i", w.min_eig_2re_y_minus_i},
              {"bounds", bounds_to_json(w.bounds)}};
}

nlohmann::json equiv_witness_to_json(const EquivWitness& w) {
  return json{{"x_tilde", matrix_to_json(w.x_tilde)},
              {"y_tilde", matrix_to_json(w.y_tilde)},
              {"residuals", json{{"x_tilde", w.residual_x_tilde}, {"y_tilde", w.residual_y_tilde}}},
              {"forward", witness_to_json(w.forward)},
              {"backward", witness_to_json(w.backward)},
              {"bounds", bounds_to_json(w.bounds)}};
}

nlohmann::json refusal_to_json(const Refusal& r) {
  return json{{"reason", r.reason}, {"residual", r.residual}};
}

nlohmann::json coefficients_to_json(const RedhefferCoefficients& phi) {
  return json{{"phi11", function_to_json(phi.phi11)},
              {"phi12", function_to_json(phi.phi12)},
              {"phi21", function_to_json(phi.phi21)},
              {"phi22", function_to_json(phi.phi22)}};
}

RedhefferCoefficients coefficients_from_json(const nlohmann::json& j) {
  return make_redheffer_coefficients(
      function_from_json(require_field(j, "phi11", "coefficients")),
      function_from_json(require_field(j, "phi12", "coefficients")),
      function_from_json(require_field(j, "phi21", "coefficients")),
      function_from_json(require_field(j, "phi22", "coefficients")));
}

nlohmann::json profile_to_json(const WitnessProfile& p) {
  json points = json::array();
  for (const ProfilePoint& pt : p.points) points.push_back(point_row(pt));
  json out{{"points", std::move(points)},
           {"radius_max", p.radius_max},
           {"growth_ratios", p.growth_ratios},
           {"sup_q", p.sup_q},
           {"sup_r", p.sup_r},
           {"inf_r_lambda", p.inf_r_lambda},
           {"classification", to_string(p.classification)}};
  if (p.refusal_lambda) {
    out["refusal"] = json{
        {"lambda", json::array({p.refusal_lambda->real(), p.refusal_lambda->imag()})},
        {"reason", p.refusal_reason}};
  }
  return out;
}

nlohmann::json preceq_result_to_json(const PreceqFnResult& r) {
  json out{{"verdict", to_string(r.verdict)}, {"profile", profile_to_json(r.profile)}};
  out["corroboration"] = json{{"ran", r.corroboration.ran},
                              {"r_used", r.corroboration.r_used},
                              {"n_eps", r.corroboration.n_eps},
                              {"max_combo_norm", r.corroboration.max_combo_norm},
                              {"pass", r.corroboration.pass}};
  return out;
}

nlohmann::json equiv_result_to_json(const EquivFnResult& r) {
  json cross = json::array();
  for (const CrossPoint& c : r.cross_points)
    cross.push_back(json{{"lambda", json::array({c.lambda.real(), c.lambda.imag()})},
                         {"norm_q_tilde", c.norm_q_tilde},
                         {"residual", c.residual},
                         {"bound_claimed", c.bound_claimed},
                         {"bound_pass", c.bound_pass}});
  json out{{"verdict", to_string(r.verdict)},
           {"forward", preceq_result_to_json(r.forward)},
           {"backward", preceq_result_to_json(r.backward)},
           {"cross_points", std::move(cross)},
           {"cross_radius_max", r.cross_radius_max},
           {"sup_q_tilde", r.sup_q_tilde},
           {"cross_bounds_pass", r.cross_bounds_pass}};
  if (r.cross_refusal_lambda)
    out["cross_refusal_lambda"] =
        json::array({r.cross_refusal_lambda->real(), r.cross_refusal_lambda->imag()});
  return out;
}

nlohmann::json certificate_to_json(const TransportCertificate& c) {
  json points = json::array();
  for (const TransportPoint& p : c.points)
    points.push_back(json{{"lambda", json::array({p.lambda.real(), p.lambda.imag()})},
                          {"norm_l", p.norm_l},
                          {"norm_lstar", p.norm_lstar},
                          {"norm_witness", p.norm_witness},
                          {"residual", p.residual}});
  return json{{"points", std::move(points)},
              {"sup_transported", c.sup_transported},
              {"input_sup", c.input_witness_sup},
              {"sup_n", c.sup_n},
              {"max_residual", c.max_residual},
              {"domain_f1", c.domain_f1},
              {"domain_f2", c.domain_f2},
              {"domain_symmetric", c.domain_symmetric},
              {"pass", c.pass}};
}

nlohmann::json pullback_report_to_json(const PullbackReport& r) {
  json rows = json::array();
  for (const PullbackRow& row : r.rows)
    rows.push_back(json{{"angle", row.angle},
                        {"norm_q_rec", row.norm_q_rec},
                        {"mismatch", row.mismatch},
                        {"residual", row.residual}});
  return json{{"rows", std::move(rows)},
              {"max_mismatch", r.max_mismatch},
              {"max_residual", r.max_residual},
              {"pass", r.pass}};
}

std::string profile_to_csv(const WitnessProfile& p) {
  std::string out = "radius,angle,norm_q,norm_r,r_lambda,residual\n";
  for (const ProfilePoint& pt : p.points) {
    out += format_full(pt.radius);
    out += ',';
    out += format_full(pt.angle);
    out += ',';
    out += format_full(pt.norm_q);
    out += ',';
    out += format_full(pt.norm_r);
    out += ',';
    out += format_full(pt.r_lambda);
    out += ',';
    out += format_full(std::max(pt.residual_x, pt.residual_y));
    out += '\n';
  }
  return out;
}

}  // namespace schur
