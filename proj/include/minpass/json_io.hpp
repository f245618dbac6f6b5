#pragma once

#include <string>

#include <json.hpp>

#include "minpass/graph_solver.hpp"
#include "minpass/realization.hpp"
#include "minpass/types.hpp"

namespace minpass {

// Wire formats. Field names are fixed for CLI interchange:
//   matrices   {"n", "re", "im"}
//   couplings  {"n", "m", "re_t", "im_t"}
//   blueprints {"n", "d", "ratios", "phases", "strengths"}

nlohmann::json to_json(const SMatrix& s);
SMatrix smatrix_from_json(const nlohmann::json& j, bool check_hermitian_unitary = true);

nlohmann::json to_json(const VertexCoupling& c);
VertexCoupling coupling_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RealizationBlueprint& b);
RealizationBlueprint blueprint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MetricGraph& g);
MetricGraph metric_graph_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMat& m);  // {"re", "im"} only
CMat matrix_from_json(const nlohmann::json& j);

// "a", "bi", "a+bi", "a-bi"; bare "i" means 1i.
Complex parse_complex(const std::string& text);
std::vector<Complex> parse_complex_list(const std::string& text);

}  // namespace minpass
