#include "minpass/graph_solver.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "minpass/coupling.hpp"

namespace minpass {
namespace {

constexpr double rcond_floor = 1e-12;  // condition-number threshold 1e12
constexpr int resonance_retries = 5;

void check_graph(const MetricGraph& g) {
  const int nv = static_cast<int>(g.strengths.size());
  if (nv == 0) throw invalid_input("metric graph needs at least one vertex");
  for (const auto& e : g.edges) {
    if (e.i < 0 || e.i >= nv || e.j < 0 || e.j >= nv)
      throw invalid_input("edge endpoint out of range");
    if (!(e.length > 0.0)) throw invalid_input("edge lengths must be positive");
  }
  if (g.leads.empty()) throw invalid_input("metric graph needs at least one lead");
  for (int v : g.leads)
    if (v < 0 || v >= nv) throw invalid_input("lead vertex out of range");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

MetricGraph to_metric_graph(const RealizationBlueprint& b) {
  MetricGraph g;
  g.strengths.assign(b.strengths.data(), b.strengths.data() + b.n);
  for (int i = 0; i < b.n; ++i) {
    for (int j = i + 1; j < b.n; ++j) {
      if (b.ratios(i, j) <= 0.0) continue;
      // e^{-i chi_ij} along i -> j; the +chi_ij direction does not
      // reproduce complex couplings
      g.edges.push_back({i, j, b.d / b.ratios(i, j), -b.phases(i, j)});
    }
  }
  g.leads.resize(b.n);
  for (int i = 0; i < b.n; ++i) g.leads[i] = i;
  return g;
}

CMat scatter(const MetricGraph& g, double k) {
  check_graph(g);
  if (!(k > 0.0)) throw invalid_input("wavenumber must be positive");

  const int nv = static_cast<int>(g.strengths.size());
  const int ne = static_cast<int>(g.edges.size());
  const int nl = static_cast<int>(g.leads.size());
  const int dim = 2 * ne + nl + nv;
  const int phi0 = 2 * ne + nl;
  const Complex ik(0.0, k);

  // unknowns: two plane-wave amplitudes per edge, one outgoing amplitude
  // per lead, one boundary value per vertex
  CMat a = CMat::Zero(dim, dim);
  CMat rhs = CMat::Zero(dim, nl);
  int row = 0;

  for (int e = 0; e < ne; ++e) {
    const auto& ed = g.edges[e];
    a(row, 2 * e) = 1.0;
    a(row, 2 * e + 1) = 1.0;
    a(row, phi0 + ed.i) = -1.0;
    ++row;
    const Complex ph = std::exp(Complex(0.0, ed.phase));
    const Complex fwd = std::exp(Complex(0.0, k * ed.length));
    a(row, 2 * e) = ph * fwd;
    a(row, 2 * e + 1) = ph / fwd;
    a(row, phi0 + ed.j) = -1.0;
    ++row;
  }
  for (int l = 0; l < nl; ++l) {
    a(row, 2 * ne + l) = 1.0;
    a(row, phi0 + g.leads[l]) = -1.0;
    rhs(row, l) = -1.0;
    ++row;
  }
  for (int v = 0; v < nv; ++v) {
    const int r = row + v;
    for (int e = 0; e < ne; ++e) {
      const auto& ed = g.edges[e];
      if (ed.i == v) {
        a(r, 2 * e) += ik;
        a(r, 2 * e + 1) -= ik;
      }
      if (ed.j == v) {
        const Complex ph = std::exp(Complex(0.0, ed.phase));
        const Complex fwd = std::exp(Complex(0.0, k * ed.length));
        a(r, 2 * e) -= ik * ph * fwd;
        a(r, 2 * e + 1) += ik * ph / fwd;
      }
    }
    for (int l = 0; l < nl; ++l) {
      if (g.leads[l] == v) {
        a(r, 2 * ne + l) += ik;
        rhs(r, l) += ik;
      }
    }
    a(r, phi0 + v) -= g.strengths[v];
  }

  Eigen::FullPivLU<CMat> lu(a);
  if (!lu.isInvertible() || lu.rcond() < rcond_floor)
    throw resonance_error("matching system is singular at this wavenumber");
  const CMat x = lu.solve(rhs);
  return x.middleRows(2 * ne, nl);
}

namespace {

ConvergenceRow study_point(const VertexCoupling& c, const CMat& target, double k, double d) {
  const RealizationBlueprint bp = compile_blueprint(c, d);
  const MetricGraph g = to_metric_graph(bp);
  double kk = k;
  for (int attempt = 0;; ++attempt) {
    try {
      const CMat s = scatter(g, kk);
      return {d, (s - target).cwiseAbs().maxCoeff(), unitarity_error(s)};
    } catch (const resonance_error&) {
      if (attempt + 1 >= resonance_retries) throw;
      kk *= 1.0 + 1e-6;
    }
  }
}

}  // namespace

std::vector<ConvergenceRow> convergence_study_serial(const VertexCoupling& c, double k,
                                                     std::span<const double> d_values) {
  const CMat target = build_s_from_t(c).entries;
  std::vector<ConvergenceRow> rows(d_values.size());
  for (std::size_t i = 0; i < d_values.size(); ++i)
    rows[i] = study_point(c, target, k, d_values[i]);
  return rows;
}

std::vector<ConvergenceRow> convergence_study(const VertexCoupling& c, double k,
                                              std::span<const double> d_values) {
  const CMat target = build_s_from_t(c).entries;
  std::vector<ConvergenceRow> rows(d_values.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(d_values.size()); ++i) {
    try {
      rows[i] = study_point(c, target, k, d_values[i]);
    } catch (const std::exception& ex) {
#pragma omp critical
      {
        failed = true;
        message = "d=" + fmt(d_values[i]) + ": " + ex.what();
      }
    }
  }
  if (failed) throw resonance_error("convergence study failed: " + message);
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "d,error,unitarity\n";
  for (const auto& r : rows)
    os << fmt(r.d) << "," << fmt(r.error) << "," << fmt(r.unitarity) << "\n";
}

}  // namespace minpass
