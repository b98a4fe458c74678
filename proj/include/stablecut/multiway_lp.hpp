#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/random.hpp"
#include "stablecut/simplex.hpp"

namespace stablecut {

// Relaxation: one point in the k-simplex per vertex, terminals pinned to the
// basis vectors, objective (1/2) sum w_e ||u - v||_1 linearized with one
// nonnegative difference pair per (edge, coordinate).
struct CkrLpProblem {
  int n = 0, k = 0, m = 0;
  std::vector<int> terminals;
  LpProblem lp;

  int var_u(int v, int i) const { return v * k + i; }
  int var_p(int e, int i) const { return n * k + 2 * (e * k + i); }
  int var_q(int e, int i) const { return n * k + 2 * (e * k + i) + 1; }
};

inline CkrLpProblem build_ckr_lp(const WeightedGraph& g, const std::vector<int>& terminals) {
  validate_terminals(g, terminals);
  CkrLpProblem p;
  p.n = g.n();
  p.k = static_cast<int>(terminals.size());
  p.m = static_cast<int>(g.m());
  p.terminals = terminals;

  const int rows = p.n + p.k * p.k + p.m * p.k;
  const int cols = p.n * p.k + 2 * p.m * p.k;
  if (rows > 4000) throw size_cap_error("ckr lp: " + std::to_string(rows) + " rows exceed cap 4000");
  p.lp.A = Eigen::MatrixXd::Zero(rows, cols);
  p.lp.b = Eigen::VectorXd::Zero(rows);
  p.lp.c = Eigen::VectorXd::Zero(cols);

  for (int v = 0; v < p.n; ++v) {  // simplex rows
    for (int i = 0; i < p.k; ++i) p.lp.A(v, p.var_u(v, i)) = 1.0;
    p.lp.b(v) = 1.0;
  }
  for (int j = 0; j < p.k; ++j)  // terminal pins (redundant with simplex rows; harmless)
    for (int i = 0; i < p.k; ++i) {
      const int row = p.n + j * p.k + i;
      p.lp.A(row, p.var_u(terminals[static_cast<std::size_t>(j)], i)) = 1.0;
      p.lp.b(row) = (i == j) ? 1.0 : 0.0;
    }
  const auto& es = g.edges();
  for (int e = 0; e < p.m; ++e)  // difference links u_i - v_i = p - q
    for (int i = 0; i < p.k; ++i) {
      const int row = p.n + p.k * p.k + e * p.k + i;
      p.lp.A(row, p.var_u(es[static_cast<std::size_t>(e)].u, i)) = 1.0;
      p.lp.A(row, p.var_u(es[static_cast<std::size_t>(e)].v, i)) = -1.0;
      p.lp.A(row, p.var_p(e, i)) = -1.0;
      p.lp.A(row, p.var_q(e, i)) = 1.0;
      p.lp.c(p.var_p(e, i)) = es[static_cast<std::size_t>(e)].w / 2.0;
      p.lp.c(p.var_q(e, i)) = es[static_cast<std::size_t>(e)].w / 2.0;
    }
  return p;
}

struct CkrSolution {
  Eigen::MatrixXd points;  // n x k, rows in the simplex
  double objective = 0.0;
  long pivots = 0;

  double d(int u, int v) const {
    return 0.5 * (points.row(u) - points.row(v)).cwiseAbs().sum();
  }
};

inline CkrSolution solve_ckr(const CkrLpProblem& p, double pivot_tol = 1e-9) {
  const LpResult r = solve_lp(p.lp, pivot_tol);
  if (r.status != LpStatus::optimal)
    throw solver_error("ckr lp: unexpected non-optimal status (the relaxation is always feasible and bounded)");
  CkrSolution sol;
  sol.points = Eigen::MatrixXd::Zero(p.n, p.k);
  for (int v = 0; v < p.n; ++v)
    for (int i = 0; i < p.k; ++i)
      sol.points(v, i) = std::clamp(r.x(p.var_u(v, i)), 0.0, 1.0);
  for (int j = 0; j < p.k; ++j) {  // exact pins regardless of float noise
    sol.points.row(p.terminals[static_cast<std::size_t>(j)]).setZero();
    sol.points(p.terminals[static_cast<std::size_t>(j)], j) = 1.0;
  }
  sol.objective = r.objective;
  sol.pivots = r.pivots;
  return sol;
}

// Integral iff every vertex point is a near-basis-vector: max coordinate
// >= max(1 - eps, 1/2) and every other coordinate <= eps.
struct LpIntegrality {
  bool integral = false;
  MultiwayPartition partition;
  int witness_vertex = 0, witness_coord = 0;
  double witness_value = 0.0;
  double max_deviation = 0.0;  // largest distance of any coordinate from {0,1}
};

inline LpIntegrality check_lp_integrality(const CkrSolution& sol, double eps_int = 1e-6) {
  const int n = static_cast<int>(sol.points.rows());
  const int k = static_cast<int>(sol.points.cols());
  LpIntegrality out;
  out.partition.k = k;
  out.partition.part.assign(static_cast<std::size_t>(n), 0);
  out.integral = true;
  for (int v = 0; v < n; ++v) {
    int imax = 0;
    for (int i = 1; i < k; ++i)
      if (sol.points(v, i) > sol.points(v, imax)) imax = i;
    out.partition.part[static_cast<std::size_t>(v)] = imax;
    for (int i = 0; i < k; ++i) {
      const double x = sol.points(v, i);
      const double dev = std::min(x, 1.0 - x);
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        out.witness_vertex = v;
        out.witness_coord = i;
        out.witness_value = x;
      }
      const bool ok = (i == imax) ? (x >= 1.0 - eps_int && x >= 0.5) : (x <= eps_int);
      if (!ok) out.integral = false;
    }
  }
  return out;
}

enum class MultiwayStatus { optimal, not_stable_certificate };

struct RobustMultiwayResult {
  MultiwayStatus status = MultiwayStatus::not_stable_certificate;
  std::optional<MultiwayPartition> partition;
  double cost = 0.0;
  CkrSolution solution;
  LpIntegrality integrality;
};

// Solve the relaxation with a deterministic simplex and accept only an
// integral basic optimum whose combinatorial cost certifies the LP value.
inline RobustMultiwayResult robust_multiway_cut(const WeightedGraph& g,
                                                const std::vector<int>& terminals,
                                                double eps_int = 1e-6,
                                                double pivot_tol = 1e-9) {
  const auto prob = build_ckr_lp(g, terminals);
  RobustMultiwayResult out;
  out.solution = solve_ckr(prob, pivot_tol);
  out.integrality = check_lp_integrality(out.solution, eps_int);
  if (!out.integrality.integral) return out;
  const double cost = multiway_cut_weight(g, out.integrality.partition);
  if (std::abs(cost - out.solution.objective) > 1e-6 * std::max(1.0, g.total_weight())) {
    out.integrality.integral = false;  // rounded partition fails to certify the LP value
    return out;
  }
  out.status = MultiwayStatus::optimal;
  out.partition = out.integrality.partition;
  out.cost = cost;
  return out;
}

// Kleinberg-Tardos rounding.  Each phase draws a part i and a threshold
// r in (0,1] and assigns every still-unassigned vertex whose i-th coordinate
// reaches r.  Terminals always land in their own part: their foreign
// coordinates are exactly 0 and r is never 0.
struct KtRound {
  MultiwayPartition partition;
  long phases = 0;
  bool capped = false;
};

inline long kt_phase_cap(int n, int k) {
  return std::lround(std::ceil(64.0 * k * (std::log(static_cast<double>(n)) + 4.0)));
}

inline KtRound kt_round(const Eigen::MatrixXd& points, const std::vector<int>& terminals,
                        std::mt19937_64& rng) {
  const int n = static_cast<int>(points.rows());
  const int k = static_cast<int>(points.cols());
  KtRound out;
  out.partition.k = k;
  out.partition.part.assign(static_cast<std::size_t>(n), -1);
  int remaining = n;
  const long cap = kt_phase_cap(n, k);
  while (remaining > 0 && out.phases < cap) {
    const int i = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
    const double r = uniform01(rng);
    ++out.phases;
    for (int v = 0; v < n; ++v) {
      if (out.partition.part[static_cast<std::size_t>(v)] >= 0) continue;
      if (points(v, i) >= r) {
        out.partition.part[static_cast<std::size_t>(v)] = i;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    out.capped = true;
    for (int v = 0; v < n; ++v) {
      if (out.partition.part[static_cast<std::size_t>(v)] >= 0) continue;
      int imax = 0;
      for (int i = 1; i < k; ++i)
        if (points(v, i) > points(v, imax)) imax = i;
      out.partition.part[static_cast<std::size_t>(v)] = imax;
    }
  }
  (void)terminals;
  return out;
}

inline KtRound kt_round(const Eigen::MatrixXd& points, const std::vector<int>& terminals,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return kt_round(points, terminals, rng);
}

// Monte-Carlo over independent seeded streams (stream s uses base_seed xor s),
// merged by counting; reproducible for a fixed base seed and stream count.
struct KtStats {
  long samples = 0;
  std::vector<long> separated;  // parallel to the query pair list
  long capped = 0;
  long terminal_misses = 0;
  long distinct_partitions = 0;
  double mean_phases = 0.0;
};

inline KtStats kt_sampling_stats(const Eigen::MatrixXd& points, const std::vector<int>& terminals,
                                 const std::vector<std::pair<int, int>>& pairs, long samples,
                                 std::uint64_t seed, int streams = 64) {
  KtStats stats;
  stats.separated.assign(pairs.size(), 0);
  std::unordered_set<std::uint64_t> seen;
  long total_phases = 0;
  for (int s = 0; s < streams; ++s) {
    const long quota = samples / streams + (s < samples % streams ? 1 : 0);
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
    for (long t = 0; t < quota; ++t) {
      const KtRound r = kt_round(points, terminals, rng);
      ++stats.samples;
      total_phases += r.phases;
      if (r.capped) ++stats.capped;
      for (std::size_t pi = 0; pi < pairs.size(); ++pi)
        if (r.partition.part[static_cast<std::size_t>(pairs[pi].first)] !=
            r.partition.part[static_cast<std::size_t>(pairs[pi].second)])
          ++stats.separated[pi];
      for (std::size_t j = 0; j < terminals.size(); ++j)
        if (r.partition.part[static_cast<std::size_t>(terminals[j])] != static_cast<int>(j))
          ++stats.terminal_misses;
      std::uint64_t h = 14695981039346656037ull;  // fnv-1a over the assignment
      for (int x : r.partition.part) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      seen.insert(h);
    }
  }
  stats.distinct_partitions = static_cast<long>(seen.size());
  stats.mean_phases = stats.samples > 0 ? static_cast<double>(total_phases) / stats.samples : 0.0;
  return stats;
}

}  // namespace stablecut
