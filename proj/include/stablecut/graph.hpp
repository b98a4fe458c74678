#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablecut/errors.hpp"
#include "stablecut/rational.hpp"

namespace stablecut {

// ---------------------------------------------------------------------------
// WeightedGraph: undirected, simple, nonnegative finite weights.  Edges are
// normalized to u < v and kept sorted, which makes serialization canonical
// and instance digests stable.  Instances are immutable after construction.
// ---------------------------------------------------------------------------

struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.u == b.u && a.v == b.v && a.w == b.w;
}

class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0) throw instance_error("vertex count must be positive");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw instance_error("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                             std::to_string(e.v) + ")");
      if (e.u == e.v) throw instance_error("self-loop rejected at vertex " + std::to_string(e.u));
      if (!(e.w >= 0.0) || !std::isfinite(e.w))
        throw instance_error("negative or non-finite weight rejected on edge (" +
                             std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw instance_error("duplicate edge rejected: (" + std::to_string(edges_[i].u) + ", " +
                             std::to_string(edges_[i].v) + ")");
    for (const auto& e : edges_) total_ += e.w;
  }

  int n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  double total_weight() const { return total_; }

  Rational total_weight_exact() const {
    Rational t = 0;
    for (const auto& e : edges_) t += exact_rational(e.w);
    return t;
  }

  bool connected() const {
    if (n_ <= 1) return true;
    std::vector<int> stack{0};
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& e : edges_) {
        const int other = e.u == u ? e.v : (e.v == u ? e.u : -1);
        if (other >= 0 && !seen[static_cast<std::size_t>(other)]) {
          seen[static_cast<std::size_t>(other)] = 1;
          ++reached;
          stack.push_back(other);
        }
      }
    }
    return reached == n_;
  }

 private:
  int n_ = 1;
  std::vector<Edge> edges_;
  double total_ = 0.0;
};

// ---------------------------------------------------------------------------
// Cut: a bipartition (S, S_bar) stored as a membership vector.  The canonical
// representative puts vertex 0 inside S; two cuts describe the same
// bipartition iff their canonical forms coincide.
// ---------------------------------------------------------------------------

class Cut {
 public:
  Cut() = default;
  explicit Cut(std::vector<char> side) : side_(std::move(side)) {}
  explicit Cut(const std::vector<bool>& side) {
    side_.reserve(side.size());
    for (bool b : side) side_.push_back(b ? 1 : 0);
  }
  Cut(int n, const std::vector<int>& members) : side_(static_cast<std::size_t>(n), 0) {
    for (int v : members) {
      if (v < 0 || v >= n) throw instance_error("cut member out of range");
      side_[static_cast<std::size_t>(v)] = 1;
    }
  }

  static Cut from_mask(int n, std::uint64_t mask) {
    if (n < 0 || n > 64) throw internal_error("mask form supports up to 64 vertices");
    std::vector<char> s(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) s[static_cast<std::size_t>(v)] = (mask >> v) & 1u ? 1 : 0;
    return Cut(std::move(s));
  }

  int n() const { return static_cast<int>(side_.size()); }
  bool side(int v) const { return side_[static_cast<std::size_t>(v)] != 0; }
  bool separates(int u, int v) const { return side(u) != side(v); }

  std::uint64_t mask() const {
    if (n() > 64) throw internal_error("mask form supports up to 64 vertices");
    std::uint64_t m = 0;
    for (int v = 0; v < n(); ++v)
      if (side(v)) m |= std::uint64_t{1} << v;
    return m;
  }

  Cut complement() const {
    std::vector<char> s(side_);
    for (auto& b : s) b = b ? 0 : 1;
    return Cut(std::move(s));
  }

  Cut canonical() const { return (!side_.empty() && !side_[0]) ? complement() : *this; }

  bool same_bipartition(const Cut& other) const {
    if (n() != other.n()) return false;
    const Cut a = canonical(), b = other.canonical();
    return a.side_ == b.side_;
  }

  // |S delta T| of the two membership sets as given (not up to complement).
  int symmetric_difference(const Cut& other) const {
    if (n() != other.n()) throw internal_error("symmetric_difference: size mismatch");
    int d = 0;
    for (int v = 0; v < n(); ++v) d += side(v) != other.side(v);
    return d;
  }

  // Hamming distance between bipartitions: min(|S delta T|, |S delta T_bar|).
  int bipartition_distance(const Cut& other) const {
    const int d = symmetric_difference(other);
    return std::min(d, n() - d);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 0; v < n(); ++v)
      if (side(v)) out.push_back(v);
    return out;
  }

  friend bool operator==(const Cut& a, const Cut& b) { return a.side_ == b.side_; }

 private:
  std::vector<char> side_;
};

inline bool is_cut_edge(const Cut& s, const Edge& e) { return s.separates(e.u, e.v); }

inline double cut_weight(const WeightedGraph& g, const Cut& s) {
  if (s.n() != g.n()) throw instance_error("cut size does not match graph");
  double w = 0.0;
  for (const auto& e : g.edges())
    if (is_cut_edge(s, e)) w += e.w;
  return w;
}

inline Rational cut_weight_exact(const WeightedGraph& g, const Cut& s) {
  if (s.n() != g.n()) throw instance_error("cut size does not match graph");
  Rational w = 0;
  for (const auto& e : g.edges())
    if (is_cut_edge(s, e)) w += exact_rational(e.w);
  return w;
}

// Weights of E(S,S_bar) \ E(T,T_bar) and E(T,T_bar) \ E(S,S_bar).
inline std::pair<double, double> symmetric_difference_weights(const WeightedGraph& g, const Cut& s,
                                                              const Cut& t) {
  if (s.n() != g.n() || t.n() != g.n())
    throw instance_error("cut size does not match graph");
  double s_minus_t = 0.0, t_minus_s = 0.0;
  for (const auto& e : g.edges()) {
    const bool in_s = is_cut_edge(s, e), in_t = is_cut_edge(t, e);
    if (in_s && !in_t) s_minus_t += e.w;
    if (in_t && !in_s) t_minus_s += e.w;
  }
  return {s_minus_t, t_minus_s};
}

inline std::pair<Rational, Rational> symmetric_difference_weights_exact(const WeightedGraph& g,
                                                                        const Cut& s,
                                                                        const Cut& t) {
  Rational s_minus_t = 0, t_minus_s = 0;
  for (const auto& e : g.edges()) {
    const bool in_s = is_cut_edge(s, e), in_t = is_cut_edge(t, e);
    if (in_s && !in_t) s_minus_t += exact_rational(e.w);
    if (in_t && !in_s) t_minus_s += exact_rational(e.w);
  }
  return {s_minus_t, t_minus_s};
}

// ---------------------------------------------------------------------------
// Perturbation: per-edge multipliers aligned with WeightedGraph::edges().
// A gamma-perturbation keeps every multiplier inside [1, gamma].
// ---------------------------------------------------------------------------

struct Perturbation {
  std::vector<double> mult;
};

inline Perturbation identity_perturbation(const WeightedGraph& g) {
  return Perturbation{std::vector<double>(g.m(), 1.0)};
}

inline void validate_perturbation(const WeightedGraph& g, const Perturbation& p, double gamma) {
  if (p.mult.size() != g.m()) throw instance_error("perturbation multiplier count mismatch");
  for (double m : p.mult) {
    if (!(m >= 1.0) || !std::isfinite(m))
      throw instance_error("perturbation multiplier below 1 rejected");
    if (m > gamma) throw instance_error("perturbation multiplier above gamma rejected");
  }
}

inline WeightedGraph perturb(const WeightedGraph& g, const Perturbation& p) {
  if (p.mult.size() != g.m()) throw instance_error("perturbation multiplier count mismatch");
  std::vector<Edge> edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(p.mult[i] >= 1.0) || !std::isfinite(p.mult[i]))
      throw instance_error("perturbation multiplier below 1 rejected");
    edges[i].w *= p.mult[i];
  }
  return WeightedGraph(g.n(), std::move(edges));
}

// Multiplies exactly the edges cut by t by gamma (the adversarial form used
// in the definition-equivalence argument).
inline Perturbation adversarial_perturbation(const WeightedGraph& g, const Cut& t, double gamma) {
  Perturbation p = identity_perturbation(g);
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    if (is_cut_edge(t, es[i])) p.mult[i] = gamma;
  return p;
}

// ---------------------------------------------------------------------------
// MultiwayPartition: part labels in [0, k).  With terminals t_0..t_{k-1} the
// i-th terminal must carry label i.
// ---------------------------------------------------------------------------

struct MultiwayPartition {
  int k = 0;
  std::vector<int> part;

  bool operator==(const MultiwayPartition& o) const { return k == o.k && part == o.part; }
};

inline void validate_terminals(const WeightedGraph& g, const std::vector<int>& terminals) {
  if (terminals.size() < 2) throw instance_error("fewer than two terminals");
  std::vector<int> sorted = terminals;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= g.n()) throw instance_error("terminal out of range");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw instance_error("duplicate terminal");
  }
}

inline void validate_partition(const WeightedGraph& g, const std::vector<int>& terminals,
                               const MultiwayPartition& p) {
  if (static_cast<int>(p.part.size()) != g.n())
    throw instance_error("partition size does not match graph");
  if (p.k != static_cast<int>(terminals.size()))
    throw instance_error("partition arity does not match terminal count");
  for (int label : p.part)
    if (label < 0 || label >= p.k) throw instance_error("partition label out of range");
  for (int i = 0; i < p.k; ++i)
    if (p.part[static_cast<std::size_t>(terminals[static_cast<std::size_t>(i)])] != i)
      throw instance_error("terminal assigned to a foreign part");
}

// Indices (into g.edges()) of the edges cut by p, plus their total weight.
inline std::pair<std::vector<std::size_t>, double> multiway_cut_edges(const WeightedGraph& g,
                                                                      const MultiwayPartition& p) {
  if (static_cast<int>(p.part.size()) != g.n())
    throw instance_error("partition size does not match graph");
  std::vector<std::size_t> idx;
  double w = 0.0;
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (p.part[static_cast<std::size_t>(es[i].u)] != p.part[static_cast<std::size_t>(es[i].v)]) {
      idx.push_back(i);
      w += es[i].w;
    }
  }
  return {std::move(idx), w};
}

inline double multiway_cut_weight(const WeightedGraph& g, const MultiwayPartition& p) {
  return multiway_cut_edges(g, p).second;
}

inline Rational multiway_cut_weight_exact(const WeightedGraph& g, const MultiwayPartition& p) {
  Rational w = 0;
  for (const auto& e : g.edges())
    if (p.part[static_cast<std::size_t>(e.u)] != p.part[static_cast<std::size_t>(e.v)])
      w += exact_rational(e.w);
  return w;
}

// ---------------------------------------------------------------------------
// SignedGraph: every edge carries exactly one +/- label.  The 2-clustering
// agreement objective counts minus-edges across the clustering plus
// plus-edges inside it.
// ---------------------------------------------------------------------------

enum class Sign : std::uint8_t { plus, minus };

struct SignedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
  Sign sign = Sign::plus;
};

class SignedGraph {
 public:
  SignedGraph() = default;
  SignedGraph(int n, std::vector<SignedEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ <= 0) throw instance_error("vertex count must be positive");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw instance_error("edge endpoint out of range");
      if (e.u == e.v) throw instance_error("self-loop rejected");
      if (!(e.w >= 0.0) || !std::isfinite(e.w))
        throw instance_error("negative or non-finite weight rejected");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const SignedEdge& a, const SignedEdge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw instance_error("edge labeled more than once: (" + std::to_string(edges_[i].u) +
                             ", " + std::to_string(edges_[i].v) + ")");
    for (const auto& e : edges_) total_ += e.w;
  }

  int n() const { return n_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  double total_weight() const { return total_; }

 private:
  int n_ = 1;
  std::vector<SignedEdge> edges_;
  double total_ = 0.0;
};

inline double agree_weight(const SignedGraph& g, const std::vector<bool>& in_first) {
  if (static_cast<int>(in_first.size()) != g.n())
    throw instance_error("clustering size does not match graph");
  double a = 0.0;
  for (const auto& e : g.edges()) {
    const bool split = in_first[static_cast<std::size_t>(e.u)] !=
                       in_first[static_cast<std::size_t>(e.v)];
    if ((e.sign == Sign::minus) == split) a += e.w;
  }
  return a;
}

inline Rational agree_weight_exact(const SignedGraph& g, const std::vector<bool>& in_first) {
  if (static_cast<int>(in_first.size()) != g.n())
    throw instance_error("clustering size does not match graph");
  Rational a = 0;
  for (const auto& e : g.edges()) {
    const bool split = in_first[static_cast<std::size_t>(e.u)] !=
                       in_first[static_cast<std::size_t>(e.v)];
    if ((e.sign == Sign::minus) == split) a += exact_rational(e.w);
  }
  return a;
}

// ---------------------------------------------------------------------------
// SparsestCutInstance: capacity edges (cap > 0) plus demand pairs (dem > 0).
// Standalone instances are expected to have a connected capacity graph; the
// auxiliary instances built by the local-search improver are naturally
// disconnected and skip that part of the validation.
// ---------------------------------------------------------------------------

struct DemandPair {
  int u = 0;
  int v = 0;
  double d = 0.0;
};

struct SparsestCutInstance {
  int n = 0;
  std::vector<Edge> capacity;
  std::vector<DemandPair> demands;
};

inline void validate_sparsest_cut(const SparsestCutInstance& inst, bool require_connected = true) {
  if (inst.n <= 0) throw instance_error("vertex count must be positive");
  for (const auto& e : inst.capacity) {
    if (e.u < 0 || e.u >= inst.n || e.v < 0 || e.v >= inst.n)
      throw instance_error("capacity endpoint out of range");
    if (e.u == e.v) throw instance_error("self-loop rejected");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw instance_error("nonpositive capacity rejected");
  }
  for (const auto& d : inst.demands) {
    if (d.u < 0 || d.u >= inst.n || d.v < 0 || d.v >= inst.n)
      throw instance_error("demand endpoint out of range");
    if (d.u == d.v) throw instance_error("demand pair must join distinct vertices");
    if (!(d.d > 0.0) || !std::isfinite(d.d)) throw instance_error("nonpositive demand rejected");
  }
  if (inst.demands.empty()) throw instance_error("at least one demand pair required");
  if (require_connected) {
    WeightedGraph cap_graph(inst.n, inst.capacity);
    if (!cap_graph.connected()) throw instance_error("capacity graph disconnected");
  }
}

inline double capacity_across(const SparsestCutInstance& inst, const Cut& a) {
  double c = 0.0;
  for (const auto& e : inst.capacity)
    if (a.separates(e.u, e.v)) c += e.w;
  return c;
}

inline double demand_across(const SparsestCutInstance& inst, const Cut& a) {
  double d = 0.0;
  for (const auto& p : inst.demands)
    if (a.separates(p.u, p.v)) d += p.d;
  return d;
}

// phi(A) = cap(E_c(A, A_bar)) / dem(E_d(A, A_bar)); defined only when the cut
// separates some demand.
inline std::optional<double> sparsity(const SparsestCutInstance& inst, const Cut& a) {
  const double dem = demand_across(inst, a);
  if (dem <= 0.0) return std::nullopt;
  return capacity_across(inst, a) / dem;
}

}  // namespace stablecut
