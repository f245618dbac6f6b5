// Compares the OpenMP kernels against their serial references and checks
// that both produce identical output. Each section runs an untimed warmup
// first (thread pool startup, heap growth) and reports the best of three.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "minpass/coupling.hpp"
#include "minpass/families.hpp"
#include "minpass/graph_solver.hpp"
#include "minpass/pattern_search.hpp"
#include "minpass/potentials.hpp"

using namespace minpass;

namespace {

template <typename F>
double best_of_three_ms(F&& f) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    best = std::min(best, ms);
  }
  return best;
}

VertexCoupling odd_coupling(int n) {
  const KappaFamilySpec spec =
      KappaFamilySpec::odd(n, std::vector<Complex>((n - 1) / 2, Complex(1.0, 0.0)));
  return recover_t_from_s(build_s_odd(spec)).coupling;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-22s %10.1f ms %10.1f ms   x%.2f   max-diff %.1e\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  {
    const VertexCoupling c = odd_coupling(9);
    RVec pots = RVec::Zero(9);
    pots(8) = 1.0;
    RVec grid(20000);
    for (int i = 0; i < 20000; ++i) grid(i) = 0.05 + i * (5.0 - 0.05) / 19999.0;

    EnergySweep a, b;
    a = sweep_serial(c, pots, grid);
    b = sweep(c, pots, grid);
    const double ts = best_of_three_ms([&] { a = sweep_serial(c, pots, grid); });
    const double tp = best_of_three_ms([&] { b = sweep(c, pots, grid); });

    double diff = 0.0;
    for (std::size_t i = 0; i < a.records.size(); ++i)
      diff = std::max(diff, (a.records[i].prob - b.records[i].prob).cwiseAbs().maxCoeff());
    row("energy sweep", ts, tp, diff);
  }

  {
    // an infeasible class runs its full restart budget
    const SupportPattern pattern = enumerate_patterns(6, 21).front();

    FeasibilityResult a = test_feasibility_serial(pattern, 256, 42);
    FeasibilityResult b = test_feasibility(pattern, 256, 42);
    const double ts =
        best_of_three_ms([&] { a = test_feasibility_serial(pattern, 256, 42); });
    const double tp = best_of_three_ms([&] { b = test_feasibility(pattern, 256, 42); });
    row("pattern feasibility", ts, tp, std::abs(a.objective - b.objective));
  }

  {
    const VertexCoupling c = odd_coupling(7);
    std::vector<double> ds;
    for (int i = 0; i < 10; ++i) ds.push_back(0.1 / (1 << i));

    std::vector<ConvergenceRow> a = convergence_study_serial(c, 1.0, ds);
    std::vector<ConvergenceRow> b = convergence_study(c, 1.0, ds);
    const double ts = best_of_three_ms([&] { a = convergence_study_serial(c, 1.0, ds); });
    const double tp = best_of_three_ms([&] { b = convergence_study(c, 1.0, ds); });
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      diff = std::max(diff, std::abs(a[i].error - b[i].error));
    row("convergence study", ts, tp, diff);
  }
  return 0;
}
