#include "minpass/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>

#include "minpass/coupling.hpp"

namespace minpass {
namespace {

void check_energy(const RVec& v, double e, int n) {
  if (static_cast<int>(v.size()) != n)
    throw invalid_input("potential vector size does not match vertex degree");
  if (!(e > 0.0)) throw invalid_input("energy must be positive");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (e == v(i)) throw threshold_error("energy sits exactly on a channel threshold");
}

Complex quarter_root(double radicand) {
  // principal branch: phase pi/4 on a negative radicand
  return std::pow(Complex(radicand, 0.0), 0.25);
}

SweepRecord sweep_point(const VertexCoupling& c, const RVec& potentials, double e) {
  PotentialScattering ps = s_with_potentials(c, ChannelPotentials{potentials, e});
  SweepRecord rec;
  rec.e = e;
  rec.open = std::move(ps.open);
  rec.prob = ps.s.cwiseAbs2();
  return rec;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PotentialScattering s_with_potentials(const VertexCoupling& c, const ChannelPotentials& p) {
  const int n = c.n;
  const int m = c.m;
  check_energy(p.v, p.e, n);

  CVec q(n);
  for (int i = 0; i < n; ++i) q(i) = quarter_root(1.0 - p.v(i) / p.e);
  const auto q1 = q.head(m);
  const auto q2 = q.tail(n - m);

  CMat left(n, m);
  left.topRows(m) = q1.asDiagonal();
  left.bottomRows(n - m) = q2.asDiagonal() * c.t.adjoint();
  CMat right(m, n);
  right.leftCols(m) = q1.asDiagonal();
  right.rightCols(n - m) = c.t * q2.asDiagonal();

  CMat mid = CMat::Zero(m, m);
  mid += (q1.array().square().matrix()).asDiagonal();
  mid += c.t * (q2.array().square().matrix()).asDiagonal() * c.t.adjoint();

  Eigen::FullPivLU<CMat> lu(mid);
  if (!lu.isInvertible())
    throw numerical_failure("potential matching system is singular");
  CMat s = 2.0 * (left * lu.solve(right)) - CMat::Identity(n, n);

  PotentialScattering out;
  out.open.resize(n);
  for (int i = 0; i < n; ++i) {
    out.open[i] = p.e > p.v(i);
    if (!out.open[i]) {
      s.row(i).setZero();
      s.col(i).setZero();
    }
  }
  out.s = std::move(s);
  return out;
}

Complex f1(double e, double u) {
  if (!(e > 0.0)) throw invalid_input("energy must be positive");
  if (u < 0.0) throw invalid_input("potential height must be nonnegative");
  if (e == u) throw threshold_error("energy sits exactly on the threshold");
  const Complex t = std::sqrt(Complex(1.0 - u / e, 0.0));
  return (1.0 - t) / (1.0 + t);
}

Complex f2(double e, double u) {
  if (!(e > 0.0)) throw invalid_input("energy must be positive");
  if (u < 0.0) throw invalid_input("potential height must be nonnegative");
  if (e == u) throw threshold_error("energy sits exactly on the threshold");
  if (e < u) return Complex(0.0, 0.0);
  const Complex t = std::sqrt(Complex(1.0 - u / e, 0.0));
  return 2.0 * quarter_root(1.0 - u / e) / (1.0 + t);
}

CVec first_column_closed_form(const KappaFamilySpec& spec, double u, double e) {
  validate(spec);
  if (spec.family != FamilyKind::odd_4p3 && spec.family != FamilyKind::odd_4p1)
    throw invalid_input("closed form applies to odd families");
  if (!(e > 0.0)) throw invalid_input("energy must be positive");
  if (u < 0.0) throw invalid_input("potential height must be nonnegative");
  if (e == u) throw threshold_error("energy sits exactly on the threshold");

  const int n = spec.n;
  const int r = (n - 1) / 2;
  const Complex k1v = spec.kappas[0];
  const double s1sq = 1.0 + std::norm(k1v);
  CVec col = CVec::Zero(n);

  if (r == 1) {
    const Complex t = std::sqrt(Complex(1.0 - u / e, 0.0));
    const Complex den = 1.0 + t + 2.0 * std::norm(k1v);
    col(0) = (1.0 - t) / den;
    col(1) = 2.0 * std::conj(k1v) * std::sqrt(s1sq) / den;
    col(2) = e > u ? 2.0 * quarter_root(1.0 - u / e) * std::sqrt(s1sq) / den : 0.0;
    return col;
  }

  const Complex k2v = spec.kappas[1];
  const double s2 = std::sqrt(1.0 + std::norm(k2v));
  const Complex t = std::sqrt(Complex(1.0 - u / e, 0.0));
  // |gain - 1| = 1 below threshold, which is what makes the bands flat
  const Complex gain = u > 0.0 ? (2.0 * e / u) * (1.0 - t) : Complex(1.0, 0.0);
  col(0) = (gain - 1.0) / s1sq;
  col(1) = (1.0 - gain) * std::conj(k1v) / (s2 * s1sq);
  col(2) = (1.0 - gain) * std::conj(k1v) * k2v / (s2 * s1sq);
  col(n - 2) = std::conj(k1v) / std::sqrt(s1sq);
  col(n - 1) = e > u ? gain * quarter_root(1.0 - u / e) / std::sqrt(s1sq) : 0.0;
  return col;
}

EnergySweep sweep_serial(const VertexCoupling& c, const RVec& potentials, const RVec& grid) {
  for (Eigen::Index i = 0; i < grid.size(); ++i) check_energy(potentials, grid(i), c.n);
  EnergySweep out;
  out.records.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out.records[i] = sweep_point(c, potentials, grid(i));
  return out;
}

EnergySweep sweep(const VertexCoupling& c, const RVec& potentials, const RVec& grid) {
  // validate up front so no exception can escape the parallel region
  for (Eigen::Index i = 0; i < grid.size(); ++i) check_energy(potentials, grid(i), c.n);
  EnergySweep out;
  out.records.resize(grid.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    try {
      out.records[i] = sweep_point(c, potentials, grid(i));
    } catch (const std::exception& ex) {
#pragma omp critical
      {
        failed = true;
        message = ex.what();
      }
    }
  }
  if (failed) throw numerical_failure("sweep failed: " + message);
  return out;
}

void write_sweep_csv(std::ostream& os, const EnergySweep& sw) {
  if (sw.records.empty()) {
    os << "E,open_mask\n";
    return;
  }
  const int n = static_cast<int>(sw.records.front().prob.rows());
  os << "E,open_mask";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) os << ",p_" << i << "_" << j;
  os << "\n";
  for (const SweepRecord& rec : sw.records) {
    os << fmt(rec.e) << ",";
    for (bool b : rec.open) os << (b ? '1' : '0');
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) os << "," << fmt(rec.prob(i, j));
    os << "\n";
  }
}

}  // namespace minpass
