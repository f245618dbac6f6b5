#pragma once

#include <string>

#include "minpass/types.hpp"

namespace minpass {

// Finite approximating graph for a vertex coupling: endpoints i, j are
// joined by an edge of length d / ratios(i, j) when ratios(i, j) > 0, a
// vector potential produces the phase shift phases(i, j) between them, and
// each endpoint carries a delta coupling of strength strengths(i).
struct RealizationBlueprint {
  int n = 0;
  double d = 0.0;
  RMat ratios;     // symmetric, zero diagonal, 0 = unconnected
  RMat phases;     // phases(i,j) = arg Q_ij for i < j, antisymmetric storage
  RVec strengths;  // units 1/length
};

// Q = [[-T T', T], [-T', I]]; reduces to [[-I, T], [-T', I]] when T T' = I.
CMat build_q(const VertexCoupling& c);

// ratios/phases from the off-diagonal of Q via r_ij e^{i chi_ij} = Q_ij;
// strengths from the diagonal of (1/d)(2I - J)R with R = {|Q_ij|}
// including the diagonal.
RealizationBlueprint compile_blueprint(const VertexCoupling& c, double d);

// Graphviz text with per-node strengths and per-edge length/phase labels.
std::string export_dot(const RealizationBlueprint& b);

}  // namespace minpass
