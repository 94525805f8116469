#pragma once

#include <json.hpp>

#include <string>

#include <schur/preorder.hpp>
#include <schur/profile.hpp>
#include <schur/redheffer.hpp>
#include <schur/schur_function.hpp>
#include <schur/types.hpp>

namespace schur {

// Wire formats. Matrices are {"rows", "cols", "data"} with data a row-major
// list of [re, im] pairs; doubles round-trip bit-exactly. Functions are
// constructor trees keyed by "kind": const, poly, blaschke, diag, block2x2,
// realization. Linear-fractional nodes are internal composites and have no
// wire form. Parse errors throw std::invalid_argument with the offending
// field named.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json function_to_json(const SchurFunction& f);
SchurFunction function_from_json(const nlohmann::json& j);

// Order witness: {"x": Matrix, "y": Matrix, "r": scalar, "residuals": {...},
// "bounds": [{"name", "claimed", "achieved", "pass"}, ...]}. Bound names use
// the fixed wire tokens eq1.1a, eq1.1b, eq1.2a, eq1.2b, eq1.3.
nlohmann::json witness_to_json(const PreorderWitness& w);
nlohmann::json equiv_witness_to_json(const EquivWitness& w);
nlohmann::json refusal_to_json(const Refusal& r);

nlohmann::json coefficients_to_json(const RedhefferCoefficients& phi);
RedhefferCoefficients coefficients_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const WitnessProfile& p);
nlohmann::json preceq_result_to_json(const PreceqFnResult& r);
nlohmann::json equiv_result_to_json(const EquivFnResult& r);
nlohmann::json certificate_to_json(const TransportCertificate& c);
nlohmann::json pullback_report_to_json(const PullbackReport& r);

// CSV sweep artifact; one row per grid point in sweep order, full double
// precision, header exactly: radius,angle,norm_q,norm_r,r_lambda,residual
// (residual is the larger of the two factorization residuals).
std::string profile_to_csv(const WitnessProfile& p);

}  // namespace schur
