#include "minpass/realization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace minpass {
namespace {

// Algebraic zeros of Q can come out as ~1e-17 products; below this the
// pair stays unconnected.
constexpr double connect_tol = 1e-12;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

CMat build_q(const VertexCoupling& c) {
  const int n = c.n;
  const int m = c.m;
  CMat q(n, n);
  q.topLeftCorner(m, m) = -(c.t * c.t.adjoint());
  q.topRightCorner(m, n - m) = c.t;
  q.bottomLeftCorner(n - m, m) = -c.t.adjoint();
  q.bottomRightCorner(n - m, n - m) = CMat::Identity(n - m, n - m);
  return q;
}

RealizationBlueprint compile_blueprint(const VertexCoupling& c, double d) {
  if (!(d > 0.0)) throw invalid_input("length scale d must be positive");
  const int n = c.n;
  const CMat q = build_q(c);

  RealizationBlueprint b;
  b.n = n;
  b.d = d;
  b.ratios = RMat::Zero(n, n);
  b.phases = RMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = std::abs(q(i, j));
      if (r <= connect_tol) continue;
      b.ratios(i, j) = r;
      b.ratios(j, i) = r;
      b.phases(i, j) = std::arg(q(i, j));
      b.phases(j, i) = -b.phases(i, j);
    }
  }

  // v_i = diagonal of (1/d)(2I - J) R with R = {|Q_ij|}, diagonal included
  b.strengths = RVec(n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) row_sum += std::abs(q(i, j));
    b.strengths(i) = (2.0 * std::abs(q(i, i)) - row_sum) / d;
  }
  return b;
}

std::string export_dot(const RealizationBlueprint& b) {
  std::ostringstream os;
  os << "graph vertex_approximation {\n";
  os << "  node [shape=circle];\n";
  for (int i = 0; i < b.n; ++i)
    os << "  e" << (i + 1) << " [label=\"" << (i + 1) << "\\nv=" << fmt(b.strengths(i))
       << "\"];\n";
  for (int i = 0; i < b.n; ++i) {
    for (int j = i + 1; j < b.n; ++j) {
      if (b.ratios(i, j) <= 0.0) continue;
      os << "  e" << (i + 1) << " -- e" << (j + 1) << " [label=\"len="
         << fmt(b.d / b.ratios(i, j)) << ", chi=" << fmt(b.phases(i, j)) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace minpass
