#pragma once

#include <cstdint>
#include <vector>

#include "minpass/types.hpp"

namespace minpass {

// Symmetric support mask; true = structurally nonzero entry.
struct SupportPattern {
  int n = 0;
  BoolMat mask;
};

enum class Verdict { feasible, infeasible, undecided };

struct FeasibilityResult {
  SupportPattern pattern;
  Verdict verdict = Verdict::undecided;
  double residual = 0.0;         // ||S^2 - I||_F^2 of the witness
  double objective = 0.0;        // best penalized objective over restarts
  double min_support_entry = 0.0;
  CMat witness;
  int restarts_used = 0;
};

// ||S S' - I||_F^2 + ||S - S'||_F^2
double pattern_residual(const CMat& s);

// Lexicographically minimal row-major bit string over simultaneous
// row/column permutations; n <= 7.
std::uint64_t canonical_key(const BoolMat& mask);

// All connected symmetric masks of dimension n with exactly `zeros` zero
// entries, one canonical representative per permutation class, sorted by
// canonical key. `mask_budget` caps the raw masks visited.
std::vector<SupportPattern> enumerate_patterns(int n, int zeros,
                                               std::uint64_t mask_budget = 100000000ULL);

// Multi-start Levenberg-Marquardt over the free entries (real diagonal,
// complex upper triangle on support). A restart certifies feasibility only
// if the residual is at most feas_tol AND every supported modulus stays
// above a floor (0.2): the closure of a class contains exact matrices of
// strictly smaller support, which must not count as witnesses, and
// infeasibility obstructions are products of two supported entries, so the
// floor must keep 2*floor^4 above the infeasibility threshold. Infeasible
// means every restart's penalized objective stayed >= 1e-4; anything in
// between is reported as undecided. Deterministic for a fixed seed and
// independent of thread count.
FeasibilityResult test_feasibility(const SupportPattern& p, int restarts, std::uint64_t seed);
FeasibilityResult test_feasibility_serial(const SupportPattern& p, int restarts,
                                          std::uint64_t seed);

inline constexpr double feas_tol = 1e-10;
inline constexpr double infeas_floor = 1e-4;

struct ZeroLevelReport {
  int zeros = 0;
  int classes = 0;
  int undecided = 0;
  bool feasible = false;
  FeasibilityResult best;  // certifying result if feasible, else lowest objective
};

struct MaxZerosReport {
  int n = 0;
  int max_zeros = -1;  // -1 when no feasible level was found in the scan
  bool clean = true;   // no undecided class above the reported maximum
  std::vector<ZeroLevelReport> levels;
};

// Scans zero counts downward from z_start (default: the connectivity cap
// (n-1)^2 + 1) and stops at the first level with a certified witness.
MaxZerosReport max_zeros(int n, int restarts = 200, std::uint64_t seed = 12345,
                         int z_start = -1);

// Appendix bounds: (n-2)^2 for odd n, (n-2)^2 + 4 for even n.
int max_zeros_bound(int n);

}  // namespace minpass
