#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/oracles.hpp"
#include "stablecut/random.hpp"
#include "stablecut/reductions.hpp"

namespace stablecut {

// Canonical 3-terminal star: center 0, terminals 1..3, w(0,1) = heavy.
inline WeightedGraph star_graph(double heavy) {
  return WeightedGraph(4, {Edge{0, 1, heavy}, Edge{0, 2, 1.0}, Edge{0, 3, 1.0}});
}

inline std::vector<int> star_terminals() { return {1, 2, 3}; }

// Random connected capacity graph (random spanning tree plus density 0.35
// extras, integer weights 1..10) with about n0 distinct demand pairs.
inline SparsestCutInstance random_sparsest_cut_instance(int n0, std::mt19937_64& rng) {
  if (n0 < 2) throw instance_error("sparsest-cut instance needs at least two vertices");
  SparsestCutInstance inst;
  inst.n = n0;
  std::vector<std::vector<char>> present(static_cast<std::size_t>(n0),
                                         std::vector<char>(static_cast<std::size_t>(n0), 0));
  for (int v = 1; v < n0; ++v) {
    const int parent = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v)));
    inst.capacity.push_back(Edge{parent, v, static_cast<double>(uniform_int(rng, 1, 10))});
    present[static_cast<std::size_t>(parent)][static_cast<std::size_t>(v)] = 1;
    present[static_cast<std::size_t>(v)][static_cast<std::size_t>(parent)] = 1;
  }
  for (int u = 0; u < n0; ++u)
    for (int v = u + 1; v < n0; ++v) {
      if (present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
      if (uniform01(rng) < 0.35)
        inst.capacity.push_back(Edge{u, v, static_cast<double>(uniform_int(rng, 1, 10))});
    }
  std::vector<std::vector<char>> dem_present(static_cast<std::size_t>(n0),
                                             std::vector<char>(static_cast<std::size_t>(n0), 0));
  for (int tries = 0; tries < 6 * n0 && static_cast<int>(inst.demands.size()) < n0; ++tries) {
    const int u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n0)));
    const int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n0)));
    if (u == v) continue;
    const int a = std::min(u, v), b = std::max(u, v);
    if (dem_present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
    dem_present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    inst.demands.push_back(DemandPair{a, b, static_cast<double>(uniform_int(rng, 1, 10))});
  }
  if (inst.demands.empty()) inst.demands.push_back(DemandPair{0, 1, 1.0});
  return inst;
}

struct GeneratedMaxcut {
  WeightedGraph graph{1, {}};
  Cut planted;
  ExtRatio margin;
  SparsestCutInstance source;
  double phi_star = 0.0;
  int halvings = 0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

// Draws a sparsest-cut instance on n/2 base vertices, halves the demands
// until phi* clears gamma, reduces, and certifies the result with the margin
// oracle.  Demand halving keeps weights dyadic, so the certification runs in
// exact arithmetic.
inline GeneratedMaxcut generate_stable_maxcut(int n, double gamma_target, std::uint64_t seed,
                                              const EnumLimits& limits = {}) {
  if (n < 4 || n % 2 != 0) throw instance_error("n must be even and at least 4");
  if (gamma_target < 1.0) throw instance_error("gamma must be at least 1");
  if (n > limits.maxcut_n) throw size_cap_error("generate_stable_maxcut: n exceeds oracle cap");
  std::mt19937_64 rng(seed);
  GeneratedMaxcut out;
  out.gamma = gamma_target;
  out.seed = seed;
  out.source = random_sparsest_cut_instance(n / 2, rng);

  const Rational gamma_r = exact_rational(gamma_target);
  for (out.halvings = 0;; ++out.halvings) {
    const auto sc = brute_sparsest_cut(out.source, limits);
    if (sc.phi_exact.greater_than(gamma_r)) {
      out.phi_star = sc.phi;
      break;
    }
    if (out.halvings >= 40)
      throw generation_error("phi* did not clear gamma within 40 demand halvings");
    for (auto& d : out.source.demands) d.d /= 2.0;
  }

  const auto art = sc_to_maxcut(out.source, gamma_target);
  const auto rep = maxcut_stability_report(art.graph, limits);
  if (!rep.optimal_cut.same_bipartition(art.planted) || !rep.unique_optimum ||
      !rep.stable(gamma_target))
    throw generation_error("reduced instance failed oracle verification");
  out.graph = art.graph;
  out.planted = art.planted;
  out.margin = rep.margin;
  return out;
}

struct GeneratedWeaklyStable {
  WeightedGraph graph{1, {}};
  Cut planted;
  ExtRatio margin;
  double gamma = 1.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
  int floaters = 0;
};

// Core-and-floater construction.  Cores form a complete bipartite heavy
// crossing pattern (weights 50..64); each of the floor(delta*n) floaters
// hangs on one opposite-side core with weight a and one same-side core with
// weight b, where a/b is the largest simple ratio not exceeding gamma.  Every
// floater flip therefore costs exactly a - b > 0 (planted stays the unique
// optimum) at competitor ratio a/b <= gamma (the instance is not strictly
// gamma-stable), while any admissible far cut must flip a core and pay a
// heavy edge.  Accepted only after the weak-stability oracle agrees.
inline GeneratedWeaklyStable generate_weakly_stable_maxcut(int n, double gamma, double delta,
                                                           std::uint64_t seed,
                                                           const EnumLimits& limits = {}) {
  if (n < 4) throw instance_error("n must be at least 4");
  if (gamma < 1.0) throw instance_error("gamma must be at least 1");
  if (delta < 0.0 || delta > 1.0) throw instance_error("delta must lie in [0, 1]");
  if (n > limits.maxcut_n) throw size_cap_error("generate_weakly_stable_maxcut: n exceeds cap");
  const int floaters = static_cast<int>(std::floor(delta * n + 1e-9));
  const int cores = n - floaters;
  if (cores < 2 || cores - cores / 2 < 1 || cores / 2 < 1)
    throw generation_error("parameters leave too few core vertices on a side");
  if (floaters >= 1 && gamma <= 1.0)
    throw generation_error("floaters require gamma > 1 (a margin in (1, gamma] must exist)");

  // floater weights (a, b): smallest b with (b + 1) / b <= gamma
  int wb = 1;
  if (floaters >= 1) {
    wb = std::max(1, static_cast<int>(std::ceil(1.0 / (gamma - 1.0) - 1e-9)));
    if ((wb + 1.0) / wb > gamma + 1e-12)
      throw generation_error("no simple floater ratio fits below gamma");
  }
  const int wa = wb + 1;

  for (int attempt = 0; attempt < 300; ++attempt) {
    std::mt19937_64 rng(splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
    std::vector<char> side(static_cast<std::size_t>(n), 0);
    std::vector<int> core0, core1;
    for (int v = 0; v < cores; ++v) {
      side[static_cast<std::size_t>(v)] = static_cast<char>(v % 2);
      (v % 2 ? core1 : core0).push_back(v);
    }
    std::vector<Edge> edges;
    for (int u : core0)
      for (int v : core1)
        edges.push_back(Edge{u, v, static_cast<double>(uniform_int(rng, 50, 64))});
    for (int f = 0; f < floaters; ++f) {
      const int u = cores + f;
      side[static_cast<std::size_t>(u)] = static_cast<char>(u % 2);
      const auto& same = (u % 2) ? core1 : core0;
      const auto& opposite = (u % 2) ? core0 : core1;
      const int o = opposite[static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(opposite.size())))];
      const int c = same[static_cast<std::size_t>(
          uniform_below(rng, static_cast<std::uint64_t>(same.size())))];
      edges.push_back(Edge{u, o, static_cast<double>(wa)});
      edges.push_back(Edge{u, c, static_cast<double>(wb)});
    }
    WeightedGraph g(n, edges);
    const Cut planted(side);
    const auto rep = maxcut_stability_report(g, limits);
    if (!rep.optimal_cut.same_bipartition(planted)) continue;
    if (floaters >= 1 && rep.stable(gamma)) continue;  // must NOT be strictly stable
    const auto weak = weak_stability_check(g, gamma, delta, limits);
    if (!weak.stable) continue;
    GeneratedWeaklyStable out;
    out.graph = g;
    out.planted = planted;
    out.margin = rep.margin;
    out.gamma = gamma;
    out.delta = delta;
    out.seed = seed;
    out.attempts = attempt + 1;
    out.floaters = floaters;
    return out;
  }
  throw generation_error("weakly stable construction rejected 300 attempts");
}

struct GeneratedMultiway {
  WeightedGraph graph{1, {}};
  std::vector<int> terminals;
  MultiwayPartition planted;
  ExtRatio margin;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  int attempts = 0;
};

// Terminals 0..k-1.  Every non-terminal gets one heavy edge into its planted
// part's terminal and at most one unit edge into each foreign part.  Unit
// targets rotate through the receiving part so no single vertex accumulates
// enough incident units to make a relocation cheap; every accepted instance
// is certified by the margin oracle.
inline GeneratedMultiway generate_stable_multiway(int n, int k, double gamma_target,
                                                  std::uint64_t seed,
                                                  const EnumLimits& limits = {}) {
  if (k < 2) throw instance_error("k must be at least 2");
  if (n < k + 1) throw instance_error("need at least one non-terminal vertex");
  if (gamma_target < 1.0) throw instance_error("gamma must be at least 1");
  if (n - k > limits.multiway_free)
    throw size_cap_error("generate_stable_multiway: free vertices exceed oracle cap");
  const int scale = std::max(1, static_cast<int>(std::ceil(gamma_target / 2.0)));

  std::vector<int> terminals(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) terminals[static_cast<std::size_t>(i)] = i;

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::mt19937_64 rng(splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt)));
    std::vector<int> part(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < k; ++i) part[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) members[static_cast<std::size_t>(i)].push_back(i);
    for (int v = k; v < n; ++v) {
      const int p = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
      part[static_cast<std::size_t>(v)] = p;
      members[static_cast<std::size_t>(p)].push_back(v);
    }
    std::vector<Edge> edges;
    for (int v = k; v < n; ++v)
      edges.push_back(Edge{part[static_cast<std::size_t>(v)], v,
                           static_cast<double>(uniform_int(rng, 6, 10) * scale)});
    std::vector<std::size_t> rotor(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
      rotor[static_cast<std::size_t>(j)] = static_cast<std::size_t>(uniform_below(
          rng, static_cast<std::uint64_t>(members[static_cast<std::size_t>(j)].size())));
    for (int v = k; v < n; ++v)
      for (int j = 0; j < k; ++j) {
        if (j == part[static_cast<std::size_t>(v)]) continue;
        if (uniform01(rng) >= 0.5) continue;
        const auto& pool = members[static_cast<std::size_t>(j)];
        const int t = pool[rotor[static_cast<std::size_t>(j)]++ % pool.size()];
        if (t == v) continue;
        bool dup = false;
        for (const auto& e : edges)
          if (std::minmax(e.u, e.v) == std::minmax(v, t)) dup = true;
        if (!dup) edges.push_back(Edge{v, t, 1.0});
      }
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (uniform01(rng) < 0.35) edges.push_back(Edge{i, j, 1.0});
    WeightedGraph g(n, edges);
    const auto rep = multiway_stability_report(g, terminals, limits);
    if (rep.optimal.part != part || !rep.unique_optimum || !rep.stable(gamma_target)) continue;
    GeneratedMultiway out;
    out.graph = g;
    out.terminals = terminals;
    out.planted = MultiwayPartition{k, part};
    out.margin = rep.margin;
    out.gamma = gamma_target;
    out.seed = seed;
    out.attempts = attempt + 1;
    return out;
  }
  throw generation_error("stable multiway construction rejected 100 attempts");
}

}  // namespace stablecut
