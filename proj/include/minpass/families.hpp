#pragma once

#include <span>
#include <vector>

#include "minpass/types.hpp"

namespace minpass {

// Minimal-passband scattering matrix families. Even degree n = 2r wraps a
// unitary r x r block A as [[0, A], [A', 0]]; odd degree is assembled
// directly as a Hermitian unitary staircase of the Q/K kernels below.

enum class FamilyKind { even_block, odd_4p3, odd_4p1, exceptional_a4 };

struct KappaFamilySpec {
  int n = 0;
  std::vector<Complex> kappas;
  FamilyKind family = FamilyKind::even_block;

  static KappaFamilySpec even(int n, std::vector<Complex> kappas);
  static KappaFamilySpec odd(int n, std::vector<Complex> kappas);
  static KappaFamilySpec a4(Complex k1, Complex k2);
};

FamilyKind odd_kind_for(int n);
void validate(const KappaFamilySpec& spec);

// Row and 2x2 block kernels. [Q1(k); Q2(k)] is unitary for every k;
// K1'(a,b) = K1(b,a) and K2'(a,b) = K2(b,a) hold entrywise exactly.
Eigen::RowVector2cd kernel_q1(Complex kappa);
Eigen::RowVector2cd kernel_q2(Complex kappa);
Eigen::Matrix2cd kernel_k1(Complex k1, Complex k2);
Eigen::Matrix2cd kernel_k2(Complex k1, Complex k2);

// 3x3 unitary with a single zero at (1,1), the smallest completely
// connected block.
CMat build_a3(Complex k1, Complex k2);

// Staircase unitary of dimension r >= 2 with r-1 nonzero parameters and
// exactly (r-2)^2 zeros.
CMat build_a_block(int r, std::span<const Complex> kappas);

// 4x4 unitary with 4 zeros that is not reachable from build_a_block(4) by
// renumbering; exposed separately and not generalized.
CMat build_a4_exceptional(Complex k1, Complex k2);

SMatrix build_s_even(const CMat& a);
SMatrix build_s_odd(const KappaFamilySpec& spec);

SMatrix build_family(const KappaFamilySpec& spec);

}  // namespace minpass
