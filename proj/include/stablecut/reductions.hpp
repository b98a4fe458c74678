#pragma once

#include <utility>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/rational.hpp"

namespace stablecut {

// Sparsest-cut -> max-cut gadget.  Every base vertex u splits into u1 = u and
// u2 = base_n + u, tied by a heavy edge that any maximum cut must separate.
// Capacity pairs become crossing edges between the two copies, demand pairs
// become parallel edges inside each copy, so a cut that deviates from the
// planted (copy-1, copy-2) split trades capacity weight against demand weight
// exactly as the sparsity ratio does.
struct ReductionArtifact {
  WeightedGraph graph{1, {}};
  Cut planted;
  double W_inf = 0.0;
  std::vector<std::pair<int, int>> heavy_edges;
  int base_n = 0;
  bool symmetric_capacity = true;
  double gamma = 1.0;
};

// `symmetric_capacity` controls the capacity gadget: the default emits the
// pair (u1,v2) and (v1,u2), which makes a deviating cut pay both orientations
// and transfers the full sparsity phi* into the stability margin; the
// one-orientation variant emits only (u1,v2) and halves the transferred
// margin.  Both are exposed because the margin claim only survives oracle
// verification in the symmetric form.
inline ReductionArtifact sc_to_maxcut(const SparsestCutInstance& inst, double gamma,
                                      bool symmetric_capacity = true) {
  if (gamma < 1.0) throw instance_error("gamma must be at least 1");
  validate_sparsest_cut(inst, /*require_connected=*/false);
  const int n0 = inst.n;
  ReductionArtifact art;
  art.base_n = n0;
  art.symmetric_capacity = symmetric_capacity;
  art.gamma = gamma;

  std::vector<Edge> edges;
  double light_total = 0.0;
  for (const auto& e : inst.capacity) {
    edges.push_back(Edge{e.u, n0 + e.v, e.w});
    light_total += e.w;
    if (symmetric_capacity) {
      edges.push_back(Edge{e.v, n0 + e.u, e.w});
      light_total += e.w;
    }
  }
  for (const auto& d : inst.demands) {
    edges.push_back(Edge{d.u, d.v, d.d});
    edges.push_back(Edge{n0 + d.u, n0 + d.v, d.d});
    light_total += 2.0 * d.d;
  }
  art.W_inf = 2.0 * gamma * light_total + 1.0;
  for (int u = 0; u < n0; ++u) {
    edges.push_back(Edge{u, n0 + u, art.W_inf});
    art.heavy_edges.emplace_back(u, n0 + u);
  }
  art.graph = WeightedGraph(2 * n0, edges);

  std::vector<char> side(static_cast<std::size_t>(2 * n0), 0);
  for (int u = 0; u < n0; ++u) side[static_cast<std::size_t>(u)] = 1;
  art.planted = Cut(side);
  return art;
}

// 2-correlation-clustering -> max-cut gadget (vertex doubling again,
// u' = base_n + u).  A 2-clustering (S, S-bar) maps to the cut keeping S and
// the primed copies of S-bar together; under that map
//   Agree(S, S-bar) = cut weight - base_n * W_inf
// holds exactly for every clustering, because the heavy pairs are always cut,
// a minus edge is cut precisely when it agrees (endpoints split), and the two
// half-weight images of a plus edge are cut precisely when it agrees
// (endpoints together).
struct Cc2Reduction {
  WeightedGraph graph{1, {}};
  double W_inf = 0.0;
  int base_n = 0;

  Cut clustering_to_cut(const Cut& clustering) const {
    std::vector<char> side(static_cast<std::size_t>(2 * base_n), 0);
    for (int u = 0; u < base_n; ++u) {
      side[static_cast<std::size_t>(u)] = clustering.side(u) ? 1 : 0;
      side[static_cast<std::size_t>(base_n + u)] = clustering.side(u) ? 0 : 1;
    }
    return Cut(side);
  }

  Cut cut_to_clustering(const Cut& cut) const {
    std::vector<char> cluster(static_cast<std::size_t>(base_n), 0);
    for (int u = 0; u < base_n; ++u) {
      if (cut.side(u) == cut.side(base_n + u))
        throw instance_error("cut does not separate the heavy pair of vertex " +
                             std::to_string(u));
      cluster[static_cast<std::size_t>(u)] = cut.side(u) ? 1 : 0;
    }
    return Cut(cluster);
  }
};

inline Cc2Reduction cc2_to_maxcut(const SignedGraph& sg, double gamma) {
  if (gamma < 1.0) throw instance_error("gamma must be at least 1");
  Cc2Reduction red;
  red.base_n = sg.n();
  const int n0 = sg.n();
  double total = 0.0;
  for (const auto& se : sg.edges()) total += se.w;
  red.W_inf = 2.0 * gamma * total + 1.0;

  std::vector<Edge> edges;
  for (const auto& se : sg.edges()) {
    if (se.sign == Sign::minus) {
      edges.push_back(Edge{se.u, se.v, se.w});
    } else {
      edges.push_back(Edge{n0 + se.u, se.v, se.w / 2.0});
      edges.push_back(Edge{se.u, n0 + se.v, se.w / 2.0});
    }
  }
  for (int u = 0; u < n0; ++u) edges.push_back(Edge{u, n0 + u, red.W_inf});
  red.graph = WeightedGraph(2 * n0, edges);
  return red;
}

}  // namespace stablecut
