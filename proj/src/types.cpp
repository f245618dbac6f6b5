#include "minpass/types.hpp"

#include <cmath>
#include <utility>

namespace minpass {

double hermiticity_error(const CMat& s) {
  return (s - s.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const CMat& s) {
  const auto n = s.rows();
  return (s * s.adjoint() - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
}

double involution_error(const CMat& s) {
  const auto n = s.rows();
  return (s * s - CMat::Identity(n, n)).cwiseAbs().maxCoeff();
}

void require_hermitian_unitary(const CMat& s, double tolerance) {
  if (s.rows() != s.cols()) throw invalid_input("matrix is not square");
  if (!s.allFinite()) throw invalid_input("matrix has non-finite entries");
  if (hermiticity_error(s) > tolerance)
    throw invalid_input("matrix is not Hermitian within tolerance");
  if (unitarity_error(s) > tolerance)
    throw invalid_input("matrix is not unitary within tolerance");
}

VertexCoupling VertexCoupling::make(int n, int m, CMat t) {
  if (n < 2) throw invalid_input("vertex degree must be at least 2");
  if (m < 1 || m > n - 1) throw invalid_input("m must satisfy 1 <= m <= n-1");
  if (t.rows() != m || t.cols() != n - m)
    throw invalid_input("coupling matrix must have shape m x (n-m)");
  if (!t.allFinite()) throw invalid_input("coupling matrix must be finite");
  return VertexCoupling{n, m, std::move(t)};
}

SMatrix SMatrix::make(CMat entries, double tol_zero) {
  if (entries.rows() != entries.cols())
    throw invalid_input("scattering matrix must be square");
  const auto n = entries.rows();
  BoolMat support(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      support(i, j) = std::abs(entries(i, j)) > tol_zero;
  return SMatrix{std::move(entries), std::move(support)};
}

int zero_count(const SMatrix& s, double tol_zero) {
  int count = 0;
  for (Eigen::Index i = 0; i < s.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < s.entries.cols(); ++j)
      if (std::abs(s.entries(i, j)) <= tol_zero) ++count;
  return count;
}

int passband_count(const SMatrix& s, double tol_zero) {
  const int n = s.n();
  return n * n - zero_count(s, tol_zero);
}

CMat permute_symmetric(const CMat& s, const std::vector<int>& perm) {
  const auto n = s.rows();
  if (static_cast<Eigen::Index>(perm.size()) != n)
    throw invalid_input("permutation size does not match matrix dimension");
  CMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = s(perm[i], perm[j]);
  return out;
}

}  // namespace minpass
