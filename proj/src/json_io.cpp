#include "minpass/json_io.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace minpass {
namespace {

using nlohmann::json;

json real_matrix(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMat parse_real_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw invalid_input(std::string(what) + " must be a 2d array");
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  RMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw invalid_input(std::string(what) + " rows have inconsistent lengths");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row.at(c).get<double>();
  }
  return m;
}

json real_vector(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RVec parse_real_vector(const json& j, const char* what) {
  if (!j.is_array()) throw invalid_input(std::string(what) + " must be an array");
  RVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

CMat combine(const RMat& re, const RMat& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols())
    throw invalid_input("re/im parts have mismatched shapes");
  CMat m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

}  // namespace

nlohmann::json matrix_to_json(const CMat& m) {
  return json{{"re", real_matrix(m.real())}, {"im", real_matrix(m.imag())}};
}

CMat matrix_from_json(const nlohmann::json& j) {
  return combine(parse_real_matrix(j.at("re"), "re"), parse_real_matrix(j.at("im"), "im"));
}

nlohmann::json to_json(const SMatrix& s) {
  json j = matrix_to_json(s.entries);
  j["n"] = s.n();
  return j;
}

SMatrix smatrix_from_json(const nlohmann::json& j, bool check_hermitian_unitary) {
  CMat m = matrix_from_json(j);
  const int n = j.at("n").get<int>();
  if (m.rows() != n || m.cols() != n)
    throw invalid_input("matrix shape does not match declared dimension");
  if (check_hermitian_unitary) require_hermitian_unitary(m);
  return SMatrix::make(std::move(m));
}

nlohmann::json to_json(const VertexCoupling& c) {
  return json{{"n", c.n},
              {"m", c.m},
              {"re_t", real_matrix(c.t.real())},
              {"im_t", real_matrix(c.t.imag())}};
}

VertexCoupling coupling_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  CMat t = combine(parse_real_matrix(j.at("re_t"), "re_t"),
                   parse_real_matrix(j.at("im_t"), "im_t"));
  return VertexCoupling::make(n, m, std::move(t));
}

nlohmann::json to_json(const RealizationBlueprint& b) {
  return json{{"n", b.n},
              {"d", b.d},
              {"ratios", real_matrix(b.ratios)},
              {"phases", real_matrix(b.phases)},
              {"strengths", real_vector(b.strengths)}};
}

RealizationBlueprint blueprint_from_json(const nlohmann::json& j) {
  RealizationBlueprint b;
  b.n = j.at("n").get<int>();
  b.d = j.at("d").get<double>();
  b.ratios = parse_real_matrix(j.at("ratios"), "ratios");
  b.phases = parse_real_matrix(j.at("phases"), "phases");
  b.strengths = parse_real_vector(j.at("strengths"), "strengths");
  if (b.n < 1 || b.ratios.rows() != b.n || b.ratios.cols() != b.n ||
      b.phases.rows() != b.n || b.phases.cols() != b.n || b.strengths.size() != b.n)
    throw invalid_input("blueprint fields have inconsistent shapes");
  if (!(b.d > 0.0)) throw invalid_input("blueprint length scale must be positive");
  return b;
}

nlohmann::json to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"i", e.i}, {"j", e.j}, {"length", e.length}, {"phase", e.phase}});
  json leads = json::array();
  for (int v : g.leads) leads.push_back(v);
  json strengths = json::array();
  for (double v : g.strengths) strengths.push_back(v);
  return json{{"strengths", strengths}, {"edges", edges}, {"leads", leads}};
}

MetricGraph metric_graph_from_json(const nlohmann::json& j) {
  MetricGraph g;
  for (const json& v : j.at("strengths")) g.strengths.push_back(v.get<double>());
  for (const json& e : j.at("edges"))
    g.edges.push_back({e.at("i").get<int>(), e.at("j").get<int>(),
                       e.at("length").get<double>(), e.at("phase").get<double>()});
  for (const json& v : j.at("leads")) g.leads.push_back(v.get<int>());
  return g;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw invalid_input("empty complex literal");

  const bool has_i = s.back() == 'i' || s.back() == 'j';
  // split "a+bi" / "a-bi" at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }

  auto to_double = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size()) throw invalid_input("bad numeric part in complex literal");
    return v;
  };

  try {
    if (has_i) {
      const std::string body = s.substr(0, s.size() - 1);
      if (split == std::string::npos) return Complex(0.0, to_double(body));
      return Complex(to_double(body.substr(0, split)), to_double(body.substr(split)));
    }
    if (split != std::string::npos && split > 0)
      throw invalid_input("complex literal with two parts must end in i");
    return Complex(to_double(s), 0.0);
  } catch (const std::exception&) {
    throw invalid_input("cannot parse complex literal: " + text);
  }
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(parse_complex(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace minpass
