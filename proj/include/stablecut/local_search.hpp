#pragma once

#include <cmath>
#include <optional>
#include <unordered_set>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/multiway_lp.hpp"
#include "stablecut/random.hpp"
#include "stablecut/sparsest_cut.hpp"

namespace stablecut {

struct ImprovementStep {
  double omega = 0.0;   // grid value used (0 for multiway rounds)
  int level = 0;        // index of omega in the descending grid / round number
  double before = 0.0;
  double after = 0.0;
  bool accepted = false;
};

struct ImprovementTrace {
  std::vector<ImprovementStep> steps;
  long iterations = 0;   // improvement calls, bounded by 4 m^3 + m for max cut
  long accepted = 0;
};

// One improvement attempt at scale omega.  Auxiliary sparsest-cut instance:
// capacities are the current cut edges, demands are the non-cut edges of
// weight >= 2*omega.  The candidate replaces T inside A by its complement:
// T' = (T cap A) cup (T-bar cap A-bar).  Accepted only for a gain >= omega.
inline std::optional<Cut> improve_cut(const WeightedGraph& g, const Cut& t, double omega,
                                      const SparsestCutSolver& sc) {
  if (!(omega > 0.0)) throw instance_error("omega must be positive");
  SparsestCutInstance aux;
  aux.n = g.n();
  for (const auto& e : g.edges()) {
    if (is_cut_edge(t, e)) {
      if (e.w > 0.0) aux.capacity.push_back(e);
    } else if (e.w >= 2.0 * omega) {
      aux.demands.push_back(DemandPair{e.u, e.v, e.w});
    }
  }
  if (aux.demands.empty()) return std::nullopt;
  // the capacity graph is a cut's edge set and is usually disconnected;
  // that is fine for the auxiliary problem
  validate_sparsest_cut(aux, /*require_connected=*/false);
  SparsestCutOutput res;
  try {
    res = sc.solve(aux);
  } catch (const instance_error&) {
    return std::nullopt;  // no admissible cut in the auxiliary instance
  }
  std::vector<char> side(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v)
    side[static_cast<std::size_t>(v)] = (t.side(v) == res.cut.side(v)) ? 1 : 0;
  const Cut candidate(side);
  if (cut_weight(g, candidate) >= cut_weight(g, t) + omega) return candidate;
  return std::nullopt;
}

struct LocalSearchResult {
  Cut cut;
  ImprovementTrace trace;
};

// Descending sweep over the grid Omega = { w(u,v) / 4m : positive weights },
// restarting from the largest omega after every accepted improvement and
// stopping after a full sweep of rejections.  The charging argument bounds
// the number of improvement calls by 4 m^3 + m; exceeding it means the
// argument is falsified, which we surface loudly as an internal error.
inline LocalSearchResult weakly_stable_max_cut(const WeightedGraph& g,
                                               const SparsestCutSolver& sc,
                                               std::optional<Cut> start = std::nullopt) {
  if (g.m() < 1) throw instance_error("local search requires at least one edge");
  const double m = static_cast<double>(g.m());
  std::vector<double> omegas;
  for (const auto& e : g.edges())
    if (e.w > 0.0) omegas.push_back(e.w / (4.0 * m));
  if (omegas.empty()) throw instance_error("local search requires a positive-weight edge");
  std::sort(omegas.begin(), omegas.end(), std::greater<double>());
  omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());

  const double md = static_cast<double>(g.m());
  const long bound = static_cast<long>(4.0 * md * md * md + md);
  LocalSearchResult out;
  out.cut = start ? *start : Cut(std::vector<char>(static_cast<std::size_t>(g.n()), 0));

  while (true) {
    bool improved = false;
    for (std::size_t level = 0; level < omegas.size(); ++level) {
      if (++out.trace.iterations > bound)
        throw internal_error("cut-improvement trace exceeded the 4m^3 + m bound");
      const double before = cut_weight(g, out.cut);
      const auto next = improve_cut(g, out.cut, omegas[level], sc);
      ImprovementStep step;
      step.omega = omegas[level];
      step.level = static_cast<int>(level);
      step.before = before;
      step.accepted = next.has_value();
      if (next) {
        out.cut = *next;
        step.after = cut_weight(g, out.cut);
        ++out.trace.accepted;
      } else {
        step.after = before;
      }
      out.trace.steps.push_back(step);
      if (next) {
        improved = true;
        break;  // restart the sweep from the top of the grid
      }
    }
    if (!improved) break;
  }
  return out;
}

// One round of the multiway improver: reweight (cut edges keep w, the rest
// get 4w), solve the relaxation under w', and sample roundings; the first
// sample strictly cheaper under the original weights wins.  Otherwise the
// round certifies a stop, reporting how many distinct partitions the samples
// covered.
struct MultiwayImproveResult {
  bool improved = false;
  MultiwayPartition partition;  // the improvement, or the input on certified stop
  double cost = 0.0;
  long trials = 0;
  int winning_trial = -1;
  long distinct_partitions = 0;
  double lp_objective = 0.0;
};

inline MultiwayImproveResult improve_multiway(const WeightedGraph& g,
                                              const std::vector<int>& terminals,
                                              const MultiwayPartition& p0, long trials,
                                              std::uint64_t seed) {
  if (trials < 1) throw instance_error("improve_multiway needs at least one trial");
  validate_partition(g, terminals, p0);
  std::vector<Edge> reweighted = g.edges();
  for (auto& e : reweighted)
    if (p0.part[static_cast<std::size_t>(e.u)] == p0.part[static_cast<std::size_t>(e.v)])
      e.w *= 4.0;
  const WeightedGraph gw(g.n(), reweighted);
  const auto lp = build_ckr_lp(gw, terminals);
  const auto sol = solve_ckr(lp);

  MultiwayImproveResult out;
  out.partition = p0;
  out.cost = multiway_cut_weight(g, p0);
  out.lp_objective = sol.objective;
  std::unordered_set<std::uint64_t> seen;
  for (long j = 0; j < trials; ++j) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(j)));
    const KtRound r = kt_round(sol.points, terminals, rng);
    ++out.trials;
    std::uint64_t h = 14695981039346656037ull;
    for (int x : r.partition.part) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    seen.insert(h);
    const double cost = multiway_cut_weight(g, r.partition);
    if (cost < out.cost) {
      out.improved = true;
      out.partition = r.partition;
      out.cost = cost;
      out.winning_trial = static_cast<int>(j);
      break;
    }
  }
  out.distinct_partitions = static_cast<long>(seen.size());
  return out;
}

struct MultiwayLocalSearchResult {
  MultiwayPartition partition;
  double cost = 0.0;
  ImprovementTrace trace;
  long distinct_partitions_at_stop = 0;
};

// Iterated improver for integer-weight instances: the cost strictly drops by
// at least 1 per accepted round, so the number of improvement rounds is at
// most the starting cost.
inline MultiwayLocalSearchResult weakly_stable_multiway(const WeightedGraph& g,
                                                        const std::vector<int>& terminals,
                                                        long trials_per_round,
                                                        std::uint64_t seed) {
  validate_terminals(g, terminals);
  for (const auto& e : g.edges())
    if (e.w != std::floor(e.w))
      throw instance_error("weakly_stable_multiway requires integer edge weights");
  if (trials_per_round <= 0) trials_per_round = 100 * std::max<long>(1, static_cast<long>(g.m()));

  MultiwayLocalSearchResult out;
  out.partition.k = static_cast<int>(terminals.size());
  out.partition.part.assign(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t j = 0; j < terminals.size(); ++j)
    out.partition.part[static_cast<std::size_t>(terminals[j])] = static_cast<int>(j);
  out.cost = multiway_cut_weight(g, out.partition);
  const double initial_cost = out.cost;

  for (long round = 0;; ++round) {
    if (static_cast<double>(out.trace.accepted) > initial_cost)
      throw internal_error("multiway improvement rounds exceeded the initial cost bound");
    const auto res = improve_multiway(g, terminals, out.partition, trials_per_round,
                                      splitmix64(seed + 0x9e3779b97f4a7c15ull *
                                                            static_cast<std::uint64_t>(round)));
    ++out.trace.iterations;
    ImprovementStep step;
    step.level = static_cast<int>(round);
    step.before = out.cost;
    step.after = res.cost;
    step.accepted = res.improved;
    out.trace.steps.push_back(step);
    if (!res.improved) {
      out.distinct_partitions_at_stop = res.distinct_partitions;
      break;
    }
    ++out.trace.accepted;
    out.partition = res.partition;
    out.cost = res.cost;
  }
  return out;
}

}  // namespace stablecut
