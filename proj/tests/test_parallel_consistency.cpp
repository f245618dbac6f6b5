#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// The OpenMP kernels must produce output identical to their serial
// references, independent of scheduling.

#include "minpass/coupling.hpp"
#include "minpass/graph_solver.hpp"
#include "minpass/pattern_search.hpp"
#include "minpass/potentials.hpp"
#include "support.hpp"

using namespace minpass;

namespace {

VertexCoupling ones_coupling(int n) {
  const int q = n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2;
  const std::vector<Complex> ks(q, Complex(1.0, 0.0));
  const KappaFamilySpec spec =
      n % 2 == 0 ? KappaFamilySpec::even(n, ks) : KappaFamilySpec::odd(n, ks);
  return recover_t_from_s(build_family(spec)).coupling;
}

}  // namespace

TEST_CASE("sweep: parallel equals serial bit for bit") {
  const VertexCoupling c = ones_coupling(7);
  RVec pots = RVec::Zero(7);
  pots(6) = 1.0;
  RVec grid(257);
  for (int i = 0; i < 257; ++i) grid(i) = 0.03 + 0.017 * i;

  const EnergySweep a = sweep_serial(c, pots, grid);
  const EnergySweep b = sweep(c, pots, grid);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].e == b.records[i].e);
    CHECK(a.records[i].open == b.records[i].open);
    CHECK((a.records[i].prob - b.records[i].prob).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("convergence study: parallel equals serial bit for bit") {
  const VertexCoupling c = ones_coupling(3);
  std::vector<double> ds;
  for (int i = 0; i < 5; ++i) ds.push_back(0.1 / (1 << i));
  const auto a = convergence_study_serial(c, 1.0, ds);
  const auto b = convergence_study(c, 1.0, ds);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].d == b[i].d);
    CHECK(a[i].error == b[i].error);
    CHECK(a[i].unitarity == b[i].unitarity);
  }
}

TEST_CASE("feasibility: parallel equals serial") {
  const SMatrix s = build_s_odd(KappaFamilySpec::odd(5, {1.0, 1.0}));
  const SupportPattern feasible{5, s.support};
  const auto a = test_feasibility_serial(feasible, 48, 31337);
  const auto b = test_feasibility(feasible, 48, 31337);
  CHECK(a.verdict == b.verdict);
  CHECK(a.restarts_used == b.restarts_used);
  CHECK(a.objective == b.objective);
  CHECK((a.witness - b.witness).cwiseAbs().maxCoeff() == 0.0);

  // an infeasible class runs every restart in both modes
  const auto patterns = enumerate_patterns(3, 2);
  REQUIRE(!patterns.empty());
  const auto c = test_feasibility_serial(patterns[0], 40, 7);
  const auto d = test_feasibility(patterns[0], 40, 7);
  CHECK(c.restarts_used == 40);
  CHECK(d.restarts_used == 40);
  CHECK(c.objective == d.objective);
  CHECK((c.witness - d.witness).cwiseAbs().maxCoeff() == 0.0);
}
