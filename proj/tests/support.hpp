#pragma once

// shared helpers for the test suites

#include <random>

#include "minpass/coupling.hpp"
#include "minpass/families.hpp"
#include "minpass/types.hpp"

namespace testutil {

using minpass::CMat;
using minpass::Complex;

inline Complex randn_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return Complex(g(rng), g(rng));
}

inline CMat random_complex(int rows, int cols, std::mt19937_64& rng) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = randn_complex(rng);
  return m;
}

inline CMat haar_unitary(int n, std::mt19937_64& rng) {
  const CMat a = random_complex(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline minpass::VertexCoupling random_coupling(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_m(1, n - 1);
  const int m = pick_m(rng);
  return minpass::VertexCoupling::make(n, m, random_complex(m, n - m, rng));
}

inline std::vector<Complex> random_kappas(int count, std::mt19937_64& rng) {
  std::vector<Complex> ks(count);
  for (auto& k : ks) {
    do {
      k = 0.7 * randn_complex(rng) + Complex(0.4, 0.0);
    } while (std::abs(k) < 0.05);
  }
  return ks;
}

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testutil
