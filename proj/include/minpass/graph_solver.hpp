#pragma once

#include <span>
#include <vector>

#include "minpass/realization.hpp"
#include "minpass/types.hpp"

namespace minpass {

// Finite metric graph with delta vertex couplings, magnetic phases on
// internal edges, and attached half-line leads. Lead l (0-based position
// in the S-matrix) attaches at vertex leads[l].
struct MetricGraph {
  struct Edge {
    int i = 0;
    int j = 0;
    double length = 0.0;
    double phase = 0.0;  // accumulated by plane waves traveling i -> j
  };

  std::vector<double> strengths;
  std::vector<Edge> edges;
  std::vector<int> leads;
};

// One lead per blueprint endpoint. The blueprint phase chi_ij enters as
// e^{-i chi_ij} along i -> j; the opposite sign does not reproduce the
// target coupling for complex couplings.
MetricGraph to_metric_graph(const RealizationBlueprint& b);

// Lead-to-lead scattering matrix at wavenumber k > 0: plane-wave matching
// with wavefunction continuity and the delta condition at every vertex.
// Throws resonance_error when the matching system is singular at this k.
CMat scatter(const MetricGraph& g, double k);

struct ConvergenceRow {
  double d = 0.0;
  double error = 0.0;      // max |S_d(k) - S_target|
  double unitarity = 0.0;  // max |S_d S_d' - I|
};

// Compiles the coupling at each d and scatters at wavenumber k; resonant
// k are retried at k (1 + 1e-6). Parallel over d values with output
// identical to the serial reference.
std::vector<ConvergenceRow> convergence_study(const VertexCoupling& c, double k,
                                              std::span<const double> d_values);
std::vector<ConvergenceRow> convergence_study_serial(const VertexCoupling& c, double k,
                                                     std::span<const double> d_values);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace minpass
