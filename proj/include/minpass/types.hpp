#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "minpass/errors.hpp"

namespace minpass {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Tolerance conventions. Double-precision construction noise stays below
// 1e-13, so the validation thresholds keep two orders of margin.
namespace tol {
inline constexpr double hermitian = 1e-10;  // input validation
inline constexpr double unitary = 1e-10;    // input validation
inline constexpr double zero = 1e-9;        // support masks
inline constexpr double build = 1e-12;      // construction targets
}  // namespace tol

double hermiticity_error(const CMat& s);  // max |S - S'|
double unitarity_error(const CMat& s);    // max |S S' - I|
double involution_error(const CMat& s);   // max |S^2 - I|

void require_hermitian_unitary(const CMat& s, double tolerance = tol::hermitian);

// Scale-invariant vertex boundary conditions on n half-lines: values mix
// with values and derivatives with derivatives, encoded by an m x (n-m)
// complex matrix.
struct VertexCoupling {
  int n = 0;
  int m = 0;
  CMat t;

  static VertexCoupling make(int n, int m, CMat t);
};

// Scattering matrix together with its structural support.
struct SMatrix {
  CMat entries;
  BoolMat support;

  int n() const { return static_cast<int>(entries.rows()); }

  static SMatrix make(CMat entries, double tol_zero = tol::zero);
};

int zero_count(const SMatrix& s, double tol_zero = tol::zero);
int passband_count(const SMatrix& s, double tol_zero = tol::zero);

// out(i, j) = s(perm[i], perm[j])
CMat permute_symmetric(const CMat& s, const std::vector<int>& perm);

}  // namespace minpass
