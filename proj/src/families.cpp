#include "minpass/families.hpp"

#include <cmath>
#include <utility>

namespace minpass {
namespace {

void require_nonzero(std::span<const Complex> kappas) {
  for (const Complex& k : kappas)
    if (k == Complex(0.0, 0.0)) throw invalid_input("family parameters must be nonzero");
}

// Anti-diagonal staircase of Q/K kernels; unitary for any parameters,
// (dim-2)^2 zeros when the parameters are nonzero. The layout is fixed by
// the explicit small cases and extends with period 2: each successive
// block row shifts one block left, K2 sits one block left of K1.
CMat staircase(int dim, std::span<const Complex> lam) {
  CMat a = CMat::Zero(dim, dim);
  if (dim % 2 == 1) {
    const int p = (dim - 1) / 2;
    const auto bcol = [](int c) { return 1 + 2 * (c - 1); };
    a.block<1, 2>(0, bcol(p)) = kernel_q1(lam[0]);
    for (int b = 1; b <= p; ++b) {
      const int row = 2 * b - 1;
      a.block<2, 2>(row, bcol(p + 1 - b)) = kernel_k1(lam[2 * b - 2], lam[2 * b - 1]);
      if (b < p)
        a.block<2, 2>(row, bcol(p - b)) = kernel_k2(lam[2 * b - 1], lam[2 * b]);
      else
        a.block<2, 1>(row, 0) = kernel_q1(lam[dim - 2]).adjoint();
    }
  } else {
    const int p = dim / 2;
    const auto bcol = [](int c) { return 2 * (c - 1); };
    a.block<1, 2>(0, bcol(p)) = kernel_q1(lam[0]);
    for (int b = 1; b < p; ++b) {
      const int row = 2 * b - 1;
      a.block<2, 2>(row, bcol(p + 1 - b)) = kernel_k1(lam[2 * b - 2], lam[2 * b - 1]);
      a.block<2, 2>(row, bcol(p - b)) = kernel_k2(lam[2 * b - 1], lam[2 * b]);
    }
    a.block<1, 2>(dim - 1, 0) = kernel_q2(lam[dim - 2]);
  }
  return a;
}

}  // namespace

KappaFamilySpec KappaFamilySpec::even(int n, std::vector<Complex> kappas) {
  KappaFamilySpec spec{n, std::move(kappas), FamilyKind::even_block};
  validate(spec);
  return spec;
}

KappaFamilySpec KappaFamilySpec::odd(int n, std::vector<Complex> kappas) {
  KappaFamilySpec spec{n, std::move(kappas), odd_kind_for(n)};
  validate(spec);
  return spec;
}

KappaFamilySpec KappaFamilySpec::a4(Complex k1, Complex k2) {
  KappaFamilySpec spec{8, {k1, k2}, FamilyKind::exceptional_a4};
  validate(spec);
  return spec;
}

FamilyKind odd_kind_for(int n) {
  if (n < 3 || n % 2 == 0) throw invalid_input("odd family requires odd n >= 3");
  return n % 4 == 3 ? FamilyKind::odd_4p3 : FamilyKind::odd_4p1;
}

void validate(const KappaFamilySpec& spec) {
  const int q = static_cast<int>(spec.kappas.size());
  switch (spec.family) {
    case FamilyKind::even_block:
      if (spec.n < 4 || spec.n % 2 != 0) throw invalid_input("even family requires even n >= 4");
      if (q != spec.n / 2 - 1) throw invalid_input("even family needs n/2 - 1 parameters");
      break;
    case FamilyKind::odd_4p3:
    case FamilyKind::odd_4p1:
      if (spec.n < 3 || spec.n % 2 == 0) throw invalid_input("odd family requires odd n >= 3");
      if (odd_kind_for(spec.n) != spec.family)
        throw invalid_input("odd family tag does not match n mod 4");
      if (q != (spec.n - 1) / 2) throw invalid_input("odd family needs (n-1)/2 parameters");
      break;
    case FamilyKind::exceptional_a4:
      if (spec.n != 8) throw invalid_input("exceptional family is defined for n = 8");
      if (q != 2) throw invalid_input("exceptional family needs 2 parameters");
      break;
  }
  require_nonzero(spec.kappas);
}

Eigen::RowVector2cd kernel_q1(Complex kappa) {
  const double s = std::sqrt(1.0 + std::norm(kappa));
  Eigen::RowVector2cd row;
  row << kappa / s, 1.0 / s;
  return row;
}

Eigen::RowVector2cd kernel_q2(Complex kappa) {
  const double s = std::sqrt(1.0 + std::norm(kappa));
  Eigen::RowVector2cd row;
  row << 1.0 / s, -std::conj(kappa) / s;
  return row;
}

Eigen::Matrix2cd kernel_k1(Complex k1, Complex k2) {
  const double s = std::sqrt(1.0 + std::norm(k1)) * std::sqrt(1.0 + std::norm(k2));
  Eigen::Matrix2cd block;
  block << -1.0 / s, std::conj(k1) / s, k2 / s, -std::conj(k1) * k2 / s;
  return block;
}

Eigen::Matrix2cd kernel_k2(Complex k1, Complex k2) {
  const double s = std::sqrt(1.0 + std::norm(k1)) * std::sqrt(1.0 + std::norm(k2));
  Eigen::Matrix2cd block;
  block << std::conj(k1) * k2 / s, std::conj(k1) / s, k2 / s, 1.0 / s;
  return block;
}

CMat build_a3(Complex k1, Complex k2) {
  if (k1 == Complex(0.0) || k2 == Complex(0.0))
    throw invalid_input("a3 parameters must be nonzero");
  const double s1 = std::sqrt(1.0 + std::norm(k1));
  const double s2 = std::sqrt(1.0 + std::norm(k2));
  CMat a(3, 3);
  a << 0.0, k1 / s1, -1.0 / s1,
      std::conj(k2) / s2, 1.0 / (s1 * s2), std::conj(k1) / (s1 * s2),
      -1.0 / s2, k2 / (s1 * s2), std::conj(k1) * k2 / (s1 * s2);
  return a;
}

CMat build_a_block(int r, std::span<const Complex> kappas) {
  if (r < 2) throw invalid_input("block dimension must be at least 2");
  if (static_cast<int>(kappas.size()) != r - 1)
    throw invalid_input("block of dimension r needs r-1 parameters");
  require_nonzero(kappas);
  return staircase(r, kappas);
}

CMat build_a4_exceptional(Complex k1, Complex k2) {
  const double s = std::sqrt(1.0 + std::norm(k1) + std::norm(k2));
  CMat a(4, 4);
  a << 0.0, k2, k1, 1.0,
      k2, 0.0, 1.0, -std::conj(k1),
      -k1, 1.0, 0.0, -std::conj(k2),
      1.0, std::conj(k1), -std::conj(k2), 0.0;
  return a / s;
}

SMatrix build_s_even(const CMat& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw invalid_input("block must be square");
  if (unitarity_error(a) > tol::unitary) throw invalid_input("block is not unitary");
  const int r = static_cast<int>(a.rows());
  CMat s = CMat::Zero(2 * r, 2 * r);
  s.topRightCorner(r, r) = a;
  s.bottomLeftCorner(r, r) = a.adjoint();
  return SMatrix::make(std::move(s));
}

SMatrix build_s_odd(const KappaFamilySpec& spec) {
  validate(spec);
  if (spec.family != FamilyKind::odd_4p3 && spec.family != FamilyKind::odd_4p1)
    throw invalid_input("build_s_odd requires an odd family spec");
  const int n = spec.n;
  // Palindromic parameter extension keeps the staircase exactly Hermitian.
  std::vector<Complex> lam(n - 1);
  for (int i = 1; i < n; ++i) lam[i - 1] = spec.kappas[std::min(i, n - i) - 1];
  return SMatrix::make(staircase(n, lam));
}

SMatrix build_family(const KappaFamilySpec& spec) {
  validate(spec);
  switch (spec.family) {
    case FamilyKind::even_block:
      return build_s_even(build_a_block(spec.n / 2, spec.kappas));
    case FamilyKind::odd_4p3:
    case FamilyKind::odd_4p1:
      return build_s_odd(spec);
    case FamilyKind::exceptional_a4:
      return build_s_even(build_a4_exceptional(spec.kappas[0], spec.kappas[1]));
  }
  throw invalid_input("unknown family kind");
}

}  // namespace minpass
