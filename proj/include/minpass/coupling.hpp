#pragma once

#include <vector>

#include "minpass/types.hpp"

namespace minpass {

// Forward map: boundary conditions -> Hermitian unitary scattering matrix.
SMatrix build_s_from_t(const VertexCoupling& c);

struct RecoveredCoupling {
  VertexCoupling coupling;
  // Maps new edge positions to the original numbering; rebuilding from the
  // coupling reproduces the input permuted by this vector.
  std::vector<int> permutation;
};

// Inverse map. Requires a Hermitian unitary input. The edge numbering is
// kept whenever the leading principal block of I + S is well conditioned
// and renumbered by pivoted selection otherwise.
RecoveredCoupling recover_t_from_s(const SMatrix& s);

struct Signature {
  int plus = 0;
  int minus = 0;
};

// Counts of +1 / -1 eigenvalues of a Hermitian unitary matrix.
Signature rank_signature(const SMatrix& s);

// Connectivity of the off-diagonal support graph; false exactly when the
// scattering problem splits into independent sub-vertices.
bool is_completely_connected(const SMatrix& s);

}  // namespace minpass
