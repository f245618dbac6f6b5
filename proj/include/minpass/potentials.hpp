#pragma once

#include <iosfwd>
#include <vector>

#include "minpass/families.hpp"
#include "minpass/types.hpp"

namespace minpass {

// Constant per-edge potentials at total energy E (units with E = k^2).
// Channel i is open iff E > v_i; E = v_i exactly is a rejected threshold.
struct ChannelPotentials {
  RVec v;
  double e = 0.0;
};

struct PotentialScattering {
  CMat s;
  std::vector<bool> open;
};

// Energy-dependent scattering matrix under constant potentials. Fourth
// roots use the principal branch below threshold; rows and columns of
// closed channels are zeroed (diagonal included). The open sub-block is
// unitary; the full matrix is not Hermitian in general.
PotentialScattering s_with_potentials(const VertexCoupling& c, const ChannelPotentials& p);

// Filter response for a single potential U: f1 = (1-t)/(1+t) with
// t = sqrt(1-U/E) (principal branch), f2 = 2(1-U/E)^{1/4}/(1+t) above
// threshold and 0 below. |f1|^2 + |f2|^2 = 1 for E > U.
Complex f1(double e, double u);
Complex f2(double e, double u);

// Closed form for the first column of an odd family member with potential
// U on the last edge. Moduli match s_with_potentials; see the run report
// for how the numerators relate to the commonly printed forms.
CVec first_column_closed_form(const KappaFamilySpec& spec, double u, double e);

struct SweepRecord {
  double e = 0.0;
  std::vector<bool> open;
  RMat prob;  // |S_ij|^2
};

struct EnergySweep {
  std::vector<SweepRecord> records;
};

// Grid must avoid thresholds (checked up front). The parallel version
// produces output identical to the serial reference.
EnergySweep sweep(const VertexCoupling& c, const RVec& potentials, const RVec& grid);
EnergySweep sweep_serial(const VertexCoupling& c, const RVec& potentials, const RVec& grid);

void write_sweep_csv(std::ostream& os, const EnergySweep& sw);

}  // namespace minpass
