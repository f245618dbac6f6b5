#include "minpass/pattern_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace minpass {
namespace {

constexpr double support_floor = 0.2;   // witness moduli must stay above this
constexpr int lm_max_iter = 80;
constexpr int restart_block = 16;       // early-exit granularity, thread independent

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

const std::vector<std::vector<int>>& permutations_of(int n) {
  static std::vector<std::vector<std::vector<int>>> cache(8);
  static std::mutex fill_mutex;
  std::lock_guard<std::mutex> lock(fill_mutex);
  auto& perms = cache[n];
  if (perms.empty()) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return perms;
}

BoolMat key_to_mask(int n, std::uint64_t key) {
  BoolMat mask(n, n);
  for (int i = n - 1; i >= 0; --i)
    for (int j = n - 1; j >= 0; --j) {
      mask(i, j) = key & 1u;
      key >>= 1;
    }
  return mask;
}

bool off_diagonal_connected(const BoolMat& mask) {
  const int n = static_cast<int>(mask.rows());
  if (n <= 1) return true;
  std::uint32_t seen = 1u;
  std::uint32_t frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (int i = 0; i < n; ++i) {
      if (!(frontier & (1u << i))) continue;
      for (int j = 0; j < n; ++j)
        if (j != i && mask(i, j) && !(seen & (1u << j))) next |= 1u << j;
    }
    seen |= next;
    frontier = next;
  }
  return seen == (1u << n) - 1u;
}

// Free parameters of a Hermitian matrix on a support mask.
struct PatternParams {
  int n = 0;
  std::vector<int> diag;                       // supported diagonal positions
  std::vector<std::pair<int, int>> off;        // supported i < j positions

  explicit PatternParams(const SupportPattern& p) : n(p.n) {
    for (int i = 0; i < n; ++i)
      if (p.mask(i, i)) diag.push_back(i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p.mask(i, j)) off.emplace_back(i, j);
  }

  int count() const { return static_cast<int>(diag.size() + 2 * off.size()); }

  CMat assemble(const RVec& th) const {
    CMat s = CMat::Zero(n, n);
    int k = 0;
    for (int d : diag) s(d, d) = th(k++);
    for (auto [i, j] : off) {
      const Complex z(th(k), th(k + 1));
      k += 2;
      s(i, j) = z;
      s(j, i) = std::conj(z);
    }
    return s;
  }

  double min_support_entry(const CMat& s) const {
    double lo = 1e300;
    for (int d : diag) lo = std::min(lo, std::abs(s(d, d)));
    for (auto [i, j] : off) lo = std::min(lo, std::abs(s(i, j)));
    return lo;
  }
};

// Residual layout: Re(S^2 - I) row-major, Im(S^2 - I) row-major, then one
// hinge term per supported entry keeping its modulus above the floor.
struct Objective {
  const PatternParams& pp;
  int n2;
  int dim;

  explicit Objective(const PatternParams& p)
      : pp(p),
        n2(p.n * p.n),
        dim(2 * p.n * p.n + static_cast<int>(p.diag.size() + p.off.size())) {}

  void residual(const CMat& s, RVec& r) const {
    const int n = pp.n;
    const CMat f = s * s - CMat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        r(i * n + j) = f(i, j).real();
        r(n2 + i * n + j) = f(i, j).imag();
      }
    int k = 2 * n2;
    for (int d : pp.diag) r(k++) = std::max(0.0, support_floor - std::abs(s(d, d)));
    for (auto [i, j] : pp.off) r(k++) = std::max(0.0, support_floor - std::abs(s(i, j)));
  }

  // d(S^2)/dp = B S + S B with B the (sparse) basis matrix of parameter p
  void jacobian(const CMat& s, RMat& jac) const {
    const int n = pp.n;
    jac.setZero();
    int p = 0;
    auto add_bs_sb = [&](int col, int bi, int bj, Complex w) {
      // contribution of w * e_bi e_bj^T to B S + S B
      for (int c = 0; c < n; ++c) {
        const Complex d1 = w * s(bj, c);  // (BS)(bi, c)
        jac(bi * n + c, col) += d1.real();
        jac(n2 + bi * n + c, col) += d1.imag();
      }
      for (int rr = 0; rr < n; ++rr) {
        const Complex d2 = s(rr, bi) * w;  // (SB)(rr, bj)
        jac(rr * n + bj, col) += d2.real();
        jac(n2 + rr * n + bj, col) += d2.imag();
      }
    };
    for (std::size_t t = 0; t < pp.diag.size(); ++t) {
      add_bs_sb(p, pp.diag[t], pp.diag[t], Complex(1.0, 0.0));
      ++p;
    }
    for (auto [i, j] : pp.off) {
      add_bs_sb(p, i, j, Complex(1.0, 0.0));
      add_bs_sb(p, j, i, Complex(1.0, 0.0));
      ++p;
      add_bs_sb(p, i, j, Complex(0.0, 1.0));
      add_bs_sb(p, j, i, Complex(0.0, -1.0));
      ++p;
    }
    // hinge rows
    int row = 2 * n2;
    int col = 0;
    for (int d : pp.diag) {
      const double v = s(d, d).real();
      if (std::abs(v) < support_floor && std::abs(v) > 1e-12)
        jac(row, col) = v > 0.0 ? -1.0 : 1.0;
      ++row;
      ++col;
    }
    for (auto [i, j] : pp.off) {
      const Complex z = s(i, j);
      const double az = std::abs(z);
      if (az < support_floor && az > 1e-12) {
        jac(row, col) = -z.real() / az;
        jac(row, col + 1) = -z.imag() / az;
      }
      ++row;
      col += 2;
    }
  }
};

struct RestartOutcome {
  double objective = 1e300;
  double raw = 1e300;
  double min_entry = 0.0;
  RVec theta;
};

RestartOutcome lm_minimize(const PatternParams& pp, RVec theta) {
  const Objective obj(pp);
  const int np = pp.count();
  RVec r(obj.dim), r_new(obj.dim);
  RMat jac(obj.dim, np);

  CMat s = pp.assemble(theta);
  obj.residual(s, r);
  double value = r.squaredNorm();
  double lambda = 1e-3;

  for (int iter = 0; iter < lm_max_iter; ++iter) {
    if (value < 1e-24) break;
    obj.jacobian(s, jac);
    const RMat h = jac.transpose() * jac;
    const RVec g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < 1e-14) break;

    bool accepted = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
      RMat damped = h;
      damped.diagonal() += lambda * h.diagonal();
      damped.diagonal().array() += 1e-12;
      const RVec step = damped.ldlt().solve(-g);
      const RVec cand = theta + step;
      const CMat s_cand = pp.assemble(cand);
      obj.residual(s_cand, r_new);
      const double v_new = r_new.squaredNorm();
      if (v_new < value) {
        theta = cand;
        s = s_cand;
        r.swap(r_new);
        value = v_new;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (step.lpNorm<Eigen::Infinity>() < 1e-14) iter = lm_max_iter;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) break;
  }

  RestartOutcome out;
  out.objective = value;
  out.theta = std::move(theta);
  const CMat sw = pp.assemble(out.theta);
  out.raw = pattern_residual(sw);
  out.min_entry = pp.min_support_entry(sw);
  return out;
}

RVec random_start(const PatternParams& pp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RVec theta(pp.count());
  int k = 0;
  for (std::size_t i = 0; i < pp.diag.size(); ++i) theta(k++) = 1.2 * u(rng);
  for (std::size_t i = 0; i < pp.off.size(); ++i) {
    theta(k++) = 0.8 * u(rng);
    theta(k++) = 0.8 * u(rng);
  }
  return theta;
}

bool certifies(const RestartOutcome& o) {
  return o.raw <= feas_tol && o.min_entry >= support_floor;
}

FeasibilityResult run_feasibility(const SupportPattern& p, int restarts, std::uint64_t seed,
                                  bool parallel) {
  if (p.n < 1 || p.n > 7) throw invalid_input("pattern dimension must be in 1..7");
  if (p.mask.rows() != p.n || p.mask.cols() != p.n)
    throw invalid_input("pattern mask has the wrong shape");
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.mask(i, j) != p.mask(j, i)) throw invalid_input("pattern mask must be symmetric");
  if (restarts < 1) throw invalid_input("at least one restart is required");

  const PatternParams pp(p);
  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<char> done(restarts, 0);

  int completed = 0;
  bool found = false;
  for (int base = 0; base < restarts && !found; base += restart_block) {
    const int hi = std::min(restarts, base + restart_block);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (int rix = base; rix < hi; ++rix) {
        outcomes[rix] = lm_minimize(pp, random_start(pp, seed ^ splitmix64(rix + 1)));
        done[rix] = 1;
      }
    } else {
      for (int rix = base; rix < hi; ++rix) {
        outcomes[rix] = lm_minimize(pp, random_start(pp, seed ^ splitmix64(rix + 1)));
        done[rix] = 1;
      }
    }
    completed = hi;
    for (int rix = base; rix < hi; ++rix)
      if (certifies(outcomes[rix])) found = true;
  }

  FeasibilityResult res;
  res.pattern = p;
  res.restarts_used = completed;

  int best = -1;
  for (int rix = 0; rix < completed; ++rix) {
    if (!done[rix]) continue;
    if (best < 0) {
      best = rix;
      continue;
    }
    const bool cand_cert = certifies(outcomes[rix]);
    const bool best_cert = certifies(outcomes[best]);
    if (cand_cert != best_cert) {
      if (cand_cert) best = rix;
    } else if (outcomes[rix].objective < outcomes[best].objective) {
      best = rix;
    }
  }
  const RestartOutcome& bo = outcomes[best];
  res.residual = bo.raw;
  res.objective = bo.objective;
  res.min_support_entry = bo.min_entry;
  res.witness = pp.assemble(bo.theta);

  if (certifies(bo)) {
    res.verdict = Verdict::feasible;
  } else {
    double min_obj = 1e300;
    for (int rix = 0; rix < completed; ++rix) min_obj = std::min(min_obj, outcomes[rix].objective);
    res.verdict = min_obj >= infeas_floor ? Verdict::infeasible : Verdict::undecided;
  }
  return res;
}

}  // namespace

double pattern_residual(const CMat& s) {
  const auto n = s.rows();
  const double uni = (s * s.adjoint() - CMat::Identity(n, n)).squaredNorm();
  const double herm = (s - s.adjoint()).squaredNorm();
  return uni + herm;
}

std::uint64_t canonical_key(const BoolMat& mask) {
  const int n = static_cast<int>(mask.rows());
  if (n > 7) throw invalid_input("canonical form supports n <= 7");
  std::uint64_t best = ~0ULL;
  for (const auto& perm : permutations_of(n)) {
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) key = (key << 1) | (mask(perm[i], perm[j]) ? 1u : 0u);
    best = std::min(best, key);
  }
  return best;
}

std::vector<SupportPattern> enumerate_patterns(int n, int zeros, std::uint64_t mask_budget) {
  if (n < 1 || n > 7) throw invalid_input("enumeration supports n in 1..7");
  if (zeros < 0 || zeros > n * n) throw invalid_input("zero count out of range");

  const int npairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::set<std::uint64_t> classes;
  std::uint64_t visited = 0;

  for (int dz = std::min(n, zeros); dz >= 0; --dz) {
    if ((zeros - dz) % 2 != 0) continue;
    const int oz = (zeros - dz) / 2;
    if (oz < 0 || oz > npairs) continue;

    // first combination of dz diagonal positions
    std::vector<int> dsel(dz);
    std::iota(dsel.begin(), dsel.end(), 0);
    bool more_d = true;
    while (more_d) {
      std::vector<int> osel(oz);
      std::iota(osel.begin(), osel.end(), 0);
      bool more_o = true;
      while (more_o) {
        if (++visited > mask_budget)
          throw budget_exceeded("pattern enumeration exceeded the mask budget");
        BoolMat mask = BoolMat::Constant(n, n, true);
        for (int d : dsel) mask(d, d) = false;
        for (int o : osel) {
          mask(pairs[o].first, pairs[o].second) = false;
          mask(pairs[o].second, pairs[o].first) = false;
        }
        if (off_diagonal_connected(mask)) classes.insert(canonical_key(mask));

        // next off-diagonal combination
        more_o = false;
        for (int i = oz - 1; i >= 0; --i) {
          if (osel[i] < npairs - (oz - i)) {
            ++osel[i];
            for (int j = i + 1; j < oz; ++j) osel[j] = osel[j - 1] + 1;
            more_o = true;
            break;
          }
        }
        if (oz == 0) more_o = false;
      }

      more_d = false;
      for (int i = dz - 1; i >= 0; --i) {
        if (dsel[i] < n - (dz - i)) {
          ++dsel[i];
          for (int j = i + 1; j < dz; ++j) dsel[j] = dsel[j - 1] + 1;
          more_d = true;
          break;
        }
      }
      if (dz == 0) more_d = false;
    }
  }

  std::vector<SupportPattern> out;
  out.reserve(classes.size());
  for (std::uint64_t key : classes) out.push_back({n, key_to_mask(n, key)});
  return out;
}

FeasibilityResult test_feasibility(const SupportPattern& p, int restarts, std::uint64_t seed) {
  return run_feasibility(p, restarts, seed, true);
}

FeasibilityResult test_feasibility_serial(const SupportPattern& p, int restarts,
                                          std::uint64_t seed) {
  return run_feasibility(p, restarts, seed, false);
}

int max_zeros_bound(int n) {
  const int base = (n - 2) * (n - 2);
  return n % 2 == 0 ? base + 4 : base;
}

MaxZerosReport max_zeros(int n, int restarts, std::uint64_t seed, int z_start) {
  if (n < 2 || n > 7) throw invalid_input("max_zeros supports n in 2..7");
  // connectivity needs at least n-1 off-diagonal pairs
  const int cap = n * n - 2 * (n - 1);
  if (z_start < 0) z_start = cap;
  z_start = std::min(z_start, cap);

  MaxZerosReport report;
  report.n = n;
  for (int z = z_start; z >= 0; --z) {
    ZeroLevelReport level;
    level.zeros = z;
    const auto patterns = enumerate_patterns(n, z);
    level.classes = static_cast<int>(patterns.size());

    bool have_best = false;
    for (const SupportPattern& p : patterns) {
      FeasibilityResult res = test_feasibility(p, restarts, seed ^ splitmix64(z));
      if (res.verdict == Verdict::undecided) ++level.undecided;
      if (!have_best || res.objective < level.best.objective) {
        level.best = res;
        have_best = true;
      }
      if (res.verdict == Verdict::feasible) {
        level.feasible = true;
        level.best = std::move(res);
        break;
      }
    }
    if (level.undecided > 0 && !level.feasible) report.clean = false;
    const bool stop = level.feasible;
    if (stop) report.max_zeros = z;
    report.levels.push_back(std::move(level));
    if (stop) break;
  }
  return report;
}

}  // namespace minpass
