#include "minpass/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <utility>

namespace minpass {
namespace {

constexpr double rank_rel_tol = 1e-8;      // singular-value cutoff for rank(S + I)
constexpr double identity_sigma = 0.05;    // keep the input numbering above this

// Picks m rows of v whose span stays well conditioned: pivoted
// Gram-Schmidt over the rows, largest residual first, lowest index on ties.
std::vector<int> pivoted_rows(const CMat& v) {
  const int n = static_cast<int>(v.rows());
  const int m = static_cast<int>(v.cols());
  CMat work = v;
  std::vector<int> picked;
  std::vector<bool> used(n, false);
  picked.reserve(m);
  for (int step = 0; step < m; ++step) {
    int best = -1;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double w = work.row(i).squaredNorm();
      if (w > best_norm * (1.0 + 1e-12) + 1e-300) {
        best = i;
        best_norm = w;
      }
    }
    picked.push_back(best);
    used[best] = true;
    CVec q = work.row(best).adjoint() / std::sqrt(best_norm);
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      const Complex overlap = work.row(i) * q;
      work.row(i) -= overlap * q.adjoint();
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

SMatrix build_s_from_t(const VertexCoupling& c) {
  const int n = c.n;
  const int m = c.m;
  CMat w(n, m);
  w.topRows(m) = CMat::Identity(m, m);
  w.bottomRows(n - m) = c.t.adjoint();
  const CMat gram = CMat::Identity(m, m) + c.t * c.t.adjoint();
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw numerical_failure("I + T T' failed to factorize");
  CMat s = 2.0 * (w * llt.solve(w.adjoint())) - CMat::Identity(n, n);
  return SMatrix::make(std::move(s));
}

RecoveredCoupling recover_t_from_s(const SMatrix& sm) {
  const CMat& s = sm.entries;
  require_hermitian_unitary(s);
  const int n = static_cast<int>(s.rows());

  Eigen::JacobiSVD<CMat> svd(s + CMat::Identity(n, n));
  const auto& sv = svd.singularValues();
  int m = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_rel_tol * sv(0)) ++m;
  if (m == 0 || m == n)
    throw invalid_input(
        "spectrum is single-signed; no representation with 1 <= m <= n-1");

  // +1 eigenspace (eigenvalues come out ascending)
  Eigen::SelfAdjointEigenSolver<CMat> eig(s);
  if (eig.info() != Eigen::Success)
    throw numerical_failure("eigendecomposition failed");
  const CMat vplus = eig.eigenvectors().rightCols(m);

  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  Eigen::JacobiSVD<CMat> head(vplus.topRows(m));
  if (head.singularValues()(m - 1) < identity_sigma) rows = pivoted_rows(vplus);

  std::vector<int> perm = rows;
  std::vector<bool> taken(n, false);
  for (int i : rows) taken[i] = true;
  for (int i = 0; i < n; ++i)
    if (!taken[i]) perm.push_back(i);

  const CMat sp = permute_symmetric(s, perm);
  const CMat s11 = sp.topLeftCorner(m, m);
  const CMat s12 = sp.topRightCorner(m, n - m);
  Eigen::PartialPivLU<CMat> lu(CMat::Identity(m, m) + s11);
  CMat t = lu.solve(s12);
  if (!t.allFinite())
    throw numerical_failure("no edge numbering made I + S11 regular");
  return RecoveredCoupling{VertexCoupling::make(n, m, std::move(t)), std::move(perm)};
}

Signature rank_signature(const SMatrix& sm) {
  require_hermitian_unitary(sm.entries);
  Eigen::SelfAdjointEigenSolver<CMat> eig(sm.entries, Eigen::EigenvaluesOnly);
  Signature sig;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) > 0.0)
      ++sig.plus;
    else
      ++sig.minus;
  }
  return sig;
}

bool is_completely_connected(const SMatrix& sm) {
  const int n = sm.n();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j = 0; j < n; ++j) {
      if (j == i || seen[j] || !sm.support(i, j)) continue;
      seen[j] = true;
      ++reached;
      frontier.push(j);
    }
  }
  return reached == n;
}

}  // namespace minpass
