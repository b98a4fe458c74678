#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/random.hpp"
#include "stablecut/rational.hpp"

namespace stablecut {

struct EnumLimits {
  int maxcut_n = 24;        // 2^(n-1) cuts
  int multiway_free = 12;   // k^(n-k) assignments
  int sparsest_n = 24;
};

namespace detail {

// Exact accumulation fast path: when every weight times 2^shift is a small
// integer (true for all shipped fixtures: integer weights, halved demands,
// w/2 gadgets), cut weights are summed in int64 without rounding.  Ratio and
// tie decisions are then exact.  Otherwise sums fall back to doubles and
// comparisons carry an explicit 1e-9 relative slack.
struct WeightView {
  bool exact = false;
  int shift = 0;
  std::vector<std::int64_t> wi;  // scaled integer weights (exact mode only)
  std::vector<double> wd;        // raw weights, always present

  static WeightView from(const std::vector<double>& ws) {
    WeightView v;
    v.wd = ws;
    for (int s = 0; s <= 40; ++s) {
      bool ok = true;
      std::vector<std::int64_t> scaled;
      scaled.reserve(ws.size());
      for (double w : ws) {
        const double y = std::ldexp(w, s);
        if (!(std::abs(y) <= 0x1p45) || y != std::floor(y)) {
          ok = false;
          break;
        }
        scaled.push_back(static_cast<std::int64_t>(y));
      }
      if (ok) {
        v.exact = true;
        v.shift = s;
        v.wi = std::move(scaled);
        return v;
      }
    }
    return v;
  }

  Rational unscale(std::int64_t sum) const {
    Rational r(sum);
    r /= Rational(BigInt(1) << shift);
    return r;
  }
};

inline std::vector<double> edge_weights(const WeightedGraph& g) {
  std::vector<double> ws;
  ws.reserve(g.m());
  for (const auto& e : g.edges()) ws.push_back(e.w);
  return ws;
}

// True lexicographic order on the membership string b_0 b_1 ... b_{n-1};
// used as the deterministic tie-break among canonical bitsets.
inline std::uint64_t lex_key(std::uint64_t mask, int n) {
  std::uint64_t key = 0;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) key |= std::uint64_t{1} << (n - 1 - v);
  return key;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute-force optima.
// ---------------------------------------------------------------------------

struct BruteCutResult {
  Cut cut;
  double value = 0.0;
  Rational value_exact;  // exact weight of the returned cut
  bool unique = true;    // no other bipartition ties the optimum
};

inline BruteCutResult brute_max_cut(const WeightedGraph& g, const EnumLimits& limits = {}) {
  const int n = g.n();
  if (n > limits.maxcut_n)
    throw size_cap_error("brute_max_cut: n = " + std::to_string(n) + " exceeds cap " +
                         std::to_string(limits.maxcut_n));
  const auto view = detail::WeightView::from(detail::edge_weights(g));
  const auto& es = g.edges();
  const std::size_t m = es.size();

  const std::uint64_t count = n >= 1 ? (std::uint64_t{1} << (n - 1)) : 1;
  std::uint64_t best_mask = 1;
  bool have_best = false, unique = true;
  std::int64_t best_i = 0;
  double best_d = 0.0;
  const double slack = 1e-9 * (1.0 + g.total_weight());

  for (std::uint64_t sub = 0; sub < count; ++sub) {
    const std::uint64_t mask = (sub << 1) | 1u;  // canonical: vertex 0 in S
    std::int64_t vi = 0;
    double vd = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (((mask >> es[i].u) ^ (mask >> es[i].v)) & 1u) {
        if (view.exact)
          vi += view.wi[i];
        else
          vd += view.wd[i];
      }
    }
    if (!have_best) {
      have_best = true;
      best_mask = mask;
      best_i = vi;
      best_d = vd;
      continue;
    }
    if (view.exact) {
      if (vi > best_i) {
        best_mask = mask;
        best_i = vi;
        unique = true;
      } else if (vi == best_i) {
        unique = false;
        if (detail::lex_key(mask, n) < detail::lex_key(best_mask, n)) best_mask = mask;
      }
    } else {
      if (vd > best_d + slack) {
        best_mask = mask;
        best_d = vd;
        unique = true;
      } else if (vd >= best_d - slack) {
        unique = false;
        if (vd > best_d) best_d = vd;
        if (detail::lex_key(mask, n) < detail::lex_key(best_mask, n)) best_mask = mask;
      }
    }
  }

  BruteCutResult out;
  out.cut = Cut::from_mask(n, best_mask);
  out.value_exact = cut_weight_exact(g, out.cut);
  out.value = view.exact ? out.value_exact.convert_to<double>() : cut_weight(g, out.cut);
  out.unique = unique;
  return out;
}

struct BruteMultiwayResult {
  MultiwayPartition partition;
  double value = 0.0;
  Rational value_exact;
  bool unique = true;
};

namespace detail {

// Enumerates all terminal-respecting partitions in base-k counter order over
// the free (non-terminal) vertices and calls fn(part_vector).
template <typename Fn>
void for_each_partition(int n, const std::vector<int>& terminals, Fn&& fn) {
  const int k = static_cast<int>(terminals.size());
  std::vector<char> is_terminal(static_cast<std::size_t>(n), 0);
  std::vector<int> part(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < k; ++i) {
    is_terminal[static_cast<std::size_t>(terminals[static_cast<std::size_t>(i)])] = 1;
    part[static_cast<std::size_t>(terminals[static_cast<std::size_t>(i)])] = i;
  }
  std::vector<int> free_vs;
  for (int v = 0; v < n; ++v)
    if (!is_terminal[static_cast<std::size_t>(v)]) free_vs.push_back(v);

  std::vector<int> counter(free_vs.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free_vs.size(); ++i)
      part[static_cast<std::size_t>(free_vs[i])] = counter[i];
    fn(part);
    // odometer increment, most significant digit first so the scan order is
    // lexicographic in the assignment vector
    std::size_t pos = free_vs.size();
    while (pos > 0) {
      --pos;
      if (++counter[pos] < k) break;
      counter[pos] = 0;
      if (pos == 0) return;
    }
    if (free_vs.empty()) return;
  }
}

}  // namespace detail

inline BruteMultiwayResult brute_multiway_cut(const WeightedGraph& g,
                                              const std::vector<int>& terminals,
                                              const EnumLimits& limits = {}) {
  validate_terminals(g, terminals);
  const int n = g.n();
  const int k = static_cast<int>(terminals.size());
  if (n - k > limits.multiway_free)
    throw size_cap_error("brute_multiway_cut: " + std::to_string(n - k) +
                         " free vertices exceed cap " + std::to_string(limits.multiway_free));
  const auto view = detail::WeightView::from(detail::edge_weights(g));
  const auto& es = g.edges();
  const double slack = 1e-9 * (1.0 + g.total_weight());

  BruteMultiwayResult out;
  bool have_best = false;
  std::int64_t best_i = 0;
  double best_d = 0.0;
  detail::for_each_partition(n, terminals, [&](const std::vector<int>& part) {
    std::int64_t vi = 0;
    double vd = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (part[static_cast<std::size_t>(es[i].u)] != part[static_cast<std::size_t>(es[i].v)]) {
        if (view.exact)
          vi += view.wi[i];
        else
          vd += view.wd[i];
      }
    }
    // first strictly better assignment wins; scan order is lexicographic, so
    // ties keep the lexicographically smallest assignment vector
    if (!have_best) {
      have_best = true;
      out.partition = MultiwayPartition{k, part};
      best_i = vi;
      best_d = vd;
      return;
    }
    if (view.exact) {
      if (vi < best_i) {
        out.partition.part = part;
        best_i = vi;
        out.unique = true;
      } else if (vi == best_i) {
        out.unique = false;
      }
    } else {
      if (vd < best_d - slack) {
        out.partition.part = part;
        best_d = vd;
        out.unique = true;
      } else if (vd <= best_d + slack) {
        out.unique = false;
      }
    }
  });
  out.partition.k = k;
  out.value_exact = multiway_cut_weight_exact(g, out.partition);
  out.value = view.exact ? out.value_exact.convert_to<double>()
                         : multiway_cut_weight(g, out.partition);
  return out;
}

struct BruteSparsestResult {
  Cut cut;
  double phi = 0.0;
  ExtRatio phi_exact;
};

inline BruteSparsestResult brute_sparsest_cut(const SparsestCutInstance& inst,
                                              const EnumLimits& limits = {}) {
  if (inst.n > limits.sparsest_n)
    throw size_cap_error("brute_sparsest_cut: n exceeds cap");
  if (inst.n < 2) throw instance_error("sparsest cut needs at least two vertices");
  std::vector<double> ws;
  for (const auto& e : inst.capacity) ws.push_back(e.w);
  const std::size_t nc = ws.size();
  for (const auto& d : inst.demands) ws.push_back(d.d);
  const auto view = detail::WeightView::from(ws);

  const int n = inst.n;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  bool have_best = false;
  std::uint64_t best_mask = 0;
  ExtRatio best;
  for (std::uint64_t sub = 0; sub < count; ++sub) {
    const std::uint64_t mask = (sub << 1) | 1u;
    if (mask + 1 == (std::uint64_t{1} << n)) continue;  // full vertex set: trivial cut
    double capd = 0.0, demd = 0.0;
    std::int64_t capi = 0, demi = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      const auto& e = inst.capacity[i];
      if (((mask >> e.u) ^ (mask >> e.v)) & 1u) {
        if (view.exact)
          capi += view.wi[i];
        else
          capd += view.wd[i];
      }
    }
    for (std::size_t i = 0; i < inst.demands.size(); ++i) {
      const auto& d = inst.demands[i];
      if (((mask >> d.u) ^ (mask >> d.v)) & 1u) {
        if (view.exact)
          demi += view.wi[nc + i];
        else
          demd += view.wd[nc + i];
      }
    }
    const bool separates = view.exact ? demi > 0 : demd > 0.0;
    if (!separates) continue;
    ExtRatio phi = view.exact
                       ? ExtRatio(Rational(capi), Rational(demi))
                       : ExtRatio(exact_rational(capd), exact_rational(demd));
    if (!have_best || phi < best ||
        (phi == best && detail::lex_key(mask, n) < detail::lex_key(best_mask, n))) {
      best = phi;
      best_mask = mask;
      have_best = true;
    }
  }
  if (!have_best) throw instance_error("no cut separates any demand pair");
  BruteSparsestResult out;
  out.cut = Cut::from_mask(n, best_mask);
  out.phi_exact = best;
  out.phi = best.to_double();
  return out;
}

// ---------------------------------------------------------------------------
// Stability margins.  margin = inf over competitors T of
//   w(E(S,S_bar) \ E(T,T_bar)) / w(E(T,T_bar) \ E(S,S_bar))
// with 0/0 = 0 and x/0 = +inf; the instance is gamma-stable iff gamma < margin
// (strict).  The empty competitor set (n <= 2 with canonical symmetry) yields
// +inf.
// ---------------------------------------------------------------------------

struct StabilityReport {
  Cut optimal_cut;
  double optimal_value = 0.0;
  Rational optimal_value_exact;
  ExtRatio margin;
  bool unique_optimum = true;
  bool exact_arithmetic = true;
  std::optional<Cut> witness;  // competitor attaining the margin

  bool stable(double gamma) const {
    if (margin.is_infinite()) return true;
    if (exact_arithmetic) return margin.greater_than(exact_rational(gamma));
    // float fallback: demand clearance beyond the documented comparison slack
    return margin.to_double() > gamma * (1.0 + 1e-9) + 1e-9;
  }
};

inline StabilityReport maxcut_stability_report(const WeightedGraph& g,
                                               const EnumLimits& limits = {}) {
  const int n = g.n();
  if (n > limits.maxcut_n) throw size_cap_error("maxcut_stability_report: n exceeds cap");
  const auto brute = brute_max_cut(g, limits);
  const auto view = detail::WeightView::from(detail::edge_weights(g));
  const auto& es = g.edges();

  StabilityReport rep;
  rep.optimal_cut = brute.cut;
  rep.optimal_value = brute.value;
  rep.optimal_value_exact = brute.value_exact;
  rep.unique_optimum = brute.unique;
  rep.exact_arithmetic = view.exact;

  const std::uint64_t s_mask = brute.cut.canonical().mask();
  std::vector<char> s_cut(es.size(), 0);
  for (std::size_t i = 0; i < es.size(); ++i)
    s_cut[i] = ((s_mask >> es[i].u) ^ (s_mask >> es[i].v)) & 1u ? 1 : 0;

  bool have = false;
  ExtRatio best = ExtRatio::infinity();
  std::uint64_t best_mask = 0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t sub = 0; sub < count; ++sub) {
    const std::uint64_t mask = (sub << 1) | 1u;
    if (mask == s_mask) continue;
    std::int64_t numi = 0, deni = 0;
    double numd = 0.0, dend = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      const bool in_t = ((mask >> es[i].u) ^ (mask >> es[i].v)) & 1u;
      if (s_cut[i] && !in_t) {
        if (view.exact)
          numi += view.wi[i];
        else
          numd += view.wd[i];
      } else if (!s_cut[i] && in_t) {
        if (view.exact)
          deni += view.wi[i];
        else
          dend += view.wd[i];
      }
    }
    ExtRatio ratio = view.exact ? ExtRatio(Rational(numi), Rational(deni))
                                : ExtRatio(exact_rational(numd), exact_rational(dend));
    if (!have || ratio < best) {
      have = true;
      best = ratio;
      best_mask = mask;
    }
  }
  if (have) {
    rep.margin = best;
    rep.witness = Cut::from_mask(n, best_mask);
  } else {
    rep.margin = ExtRatio::infinity();
  }
  return rep;
}

struct MultiwayStabilityReport {
  MultiwayPartition optimal;
  double optimal_value = 0.0;
  Rational optimal_value_exact;
  ExtRatio margin;
  bool unique_optimum = true;
  bool exact_arithmetic = true;
  std::optional<MultiwayPartition> witness;

  bool stable(double gamma) const {
    if (margin.is_infinite()) return true;
    if (exact_arithmetic) return margin.greater_than(exact_rational(gamma));
    return margin.to_double() > gamma * (1.0 + 1e-9) + 1e-9;
  }
};

inline MultiwayStabilityReport multiway_stability_report(const WeightedGraph& g,
                                                         const std::vector<int>& terminals,
                                                         const EnumLimits& limits = {}) {
  const auto brute = brute_multiway_cut(g, terminals, limits);
  const auto view = detail::WeightView::from(detail::edge_weights(g));
  const auto& es = g.edges();

  MultiwayStabilityReport rep;
  rep.optimal = brute.partition;
  rep.optimal_value = brute.value;
  rep.optimal_value_exact = brute.value_exact;
  rep.unique_optimum = brute.unique;
  rep.exact_arithmetic = view.exact;

  std::vector<char> s_cut(es.size(), 0);
  for (std::size_t i = 0; i < es.size(); ++i)
    s_cut[i] = brute.partition.part[static_cast<std::size_t>(es[i].u)] !=
                       brute.partition.part[static_cast<std::size_t>(es[i].v)]
                   ? 1
                   : 0;

  // minimization flips the competitor ratio: margin = inf w(E' \ E*) / w(E* \ E')
  bool have = false;
  ExtRatio best = ExtRatio::infinity();
  MultiwayPartition best_part;
  const int k = static_cast<int>(terminals.size());
  detail::for_each_partition(g.n(), terminals, [&](const std::vector<int>& part) {
    if (part == brute.partition.part) return;
    std::int64_t opt_onlyi = 0, comp_onlyi = 0;
    double opt_onlyd = 0.0, comp_onlyd = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      const bool in_t = part[static_cast<std::size_t>(es[i].u)] !=
                        part[static_cast<std::size_t>(es[i].v)];
      if (s_cut[i] && !in_t) {
        if (view.exact)
          opt_onlyi += view.wi[i];
        else
          opt_onlyd += view.wd[i];
      } else if (!s_cut[i] && in_t) {
        if (view.exact)
          comp_onlyi += view.wi[i];
        else
          comp_onlyd += view.wd[i];
      }
    }
    ExtRatio ratio = view.exact
                         ? ExtRatio(Rational(comp_onlyi), Rational(opt_onlyi))
                         : ExtRatio(exact_rational(comp_onlyd), exact_rational(opt_onlyd));
    if (!have || ratio < best) {
      have = true;
      best = ratio;
      best_part = MultiwayPartition{k, part};
    }
  });
  if (have) {
    rep.margin = best;
    rep.witness = best_part;
  } else {
    rep.margin = ExtRatio::infinity();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak (gamma, delta)-stability: the margin inequality is required only for
// competitors T with |S delta T| > delta*n and |S delta T_bar| > delta*n.
// ---------------------------------------------------------------------------

struct WeakStabilityResult {
  bool stable = true;
  Cut optimum;
  std::optional<Cut> violating_cut;
  bool exact_arithmetic = true;
};

inline WeakStabilityResult weak_stability_check(const WeightedGraph& g, double gamma, double delta,
                                                const EnumLimits& limits = {}) {
  if (gamma < 1.0) throw instance_error("gamma must be at least 1");
  if (delta < 0.0) throw instance_error("delta must be nonnegative");
  const int n = g.n();
  if (n > limits.maxcut_n) throw size_cap_error("weak_stability_check: n exceeds cap");
  const auto brute = brute_max_cut(g, limits);
  const auto view = detail::WeightView::from(detail::edge_weights(g));
  const auto& es = g.edges();
  const Rational gamma_r = exact_rational(gamma);

  WeakStabilityResult out;
  out.optimum = brute.cut;
  out.exact_arithmetic = view.exact;

  const std::uint64_t s_mask = brute.cut.canonical().mask();
  std::vector<char> s_cut(es.size(), 0);
  for (std::size_t i = 0; i < es.size(); ++i)
    s_cut[i] = ((s_mask >> es[i].u) ^ (s_mask >> es[i].v)) & 1u ? 1 : 0;

  const double radius = delta * n;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t sub = 0; sub < count; ++sub) {
    const std::uint64_t mask = (sub << 1) | 1u;
    if (mask == s_mask) continue;
    const int h = __builtin_popcountll(mask ^ s_mask);
    if (!(h > radius && (n - h) > radius)) continue;  // inside the neighborhood
    std::int64_t numi = 0, deni = 0;
    double numd = 0.0, dend = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      const bool in_t = ((mask >> es[i].u) ^ (mask >> es[i].v)) & 1u;
      if (s_cut[i] && !in_t) {
        if (view.exact)
          numi += view.wi[i];
        else
          numd += view.wd[i];
      } else if (!s_cut[i] && in_t) {
        if (view.exact)
          deni += view.wi[i];
        else
          dend += view.wd[i];
      }
    }
    bool ok;
    if (view.exact) {
      ok = Rational(numi) > gamma_r * Rational(deni);  // strict
    } else {
      ok = numd > gamma * dend * (1.0 + 1e-9) + 1e-9;
    }
    if (!ok) {
      out.stable = false;
      out.violating_cut = Cut::from_mask(n, mask);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Perturbation cross-check: samples `trials` random gamma-perturbations
// (stream t seeded with seed xor t) and applies the adversarial perturbation
// of every canonical competitor (multiply exactly the edges it cuts by
// gamma), brute re-optimizing each time.  Consistency means every perturbed
// optimum stays at S (strong form, delta = 0) or inside the delta-ball
// around S (weak form).  Adversarial re-optimization is exact; ties count as
// violations whenever any tied optimum escapes the neighborhood.
// ---------------------------------------------------------------------------

struct CrossCheckResult {
  bool consistent = true;
  int random_checked = 0;
  int adversarial_checked = 0;
  std::optional<Perturbation> counterexample;
  std::optional<Cut> offending_optimum;
};

inline CrossCheckResult perturbation_cross_check(const WeightedGraph& g, double gamma, int trials,
                                                 std::uint64_t seed, double delta = 0.0,
                                                 const EnumLimits& limits = {}) {
  if (gamma < 1.0) throw instance_error("gamma must be at least 1");
  const int n = g.n();
  // the adversarial sweep is Theta(4^(n-1) * m) exact-rational work
  if (n > 14) throw size_cap_error("perturbation_cross_check: n exceeds cap 14");
  const auto brute = brute_max_cut(g, limits);
  const std::uint64_t s_mask = brute.cut.canonical().mask();
  const auto& es = g.edges();
  const std::size_t m = es.size();
  const double radius = delta * n;

  const auto inside = [&](std::uint64_t mask) {
    const int h = __builtin_popcountll(mask ^ s_mask);
    return h <= radius || (n - h) <= radius;
  };

  CrossCheckResult out;

  // Random perturbations: double accumulation (multipliers are generic
  // floats; exact ties have measure zero).
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    Perturbation p;
    p.mult.reserve(m);
    for (std::size_t i = 0; i < m; ++i) p.mult.push_back(uniform_real(rng, 1.0, gamma));
    std::vector<double> pw(m);
    for (std::size_t i = 0; i < m; ++i) pw[i] = es[i].w * p.mult[i];

    double best = -1.0;
    std::uint64_t best_mask = 1;
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t sub = 0; sub < count; ++sub) {
      const std::uint64_t mask = (sub << 1) | 1u;
      double v = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        if (((mask >> es[i].u) ^ (mask >> es[i].v)) & 1u) v += pw[i];
      if (v > best) {
        best = v;
        best_mask = mask;
      }
    }
    ++out.random_checked;
    if (!inside(best_mask)) {
      out.consistent = false;
      out.counterexample = std::move(p);
      out.offending_optimum = Cut::from_mask(n, best_mask);
      return out;
    }
  }

  // Adversarial perturbations, exact arithmetic.  For candidate T the
  // perturbed value of U is  base(U) + (gamma - 1) * overlap(T, U), so with
  // gamma = pg/qg every comparison reduces to integers-scaled rationals.
  const Rational gamma_r = exact_rational(gamma);
  std::vector<Rational> wr(m);
  for (std::size_t i = 0; i < m; ++i) wr[i] = exact_rational(es[i].w);

  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<Rational> base(count);
  for (std::uint64_t sub = 0; sub < count; ++sub) {
    const std::uint64_t mask = (sub << 1) | 1u;
    Rational v = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (((mask >> es[i].u) ^ (mask >> es[i].v)) & 1u) v += wr[i];
    base[sub] = v;
  }

  for (std::uint64_t tsub = 0; tsub < count; ++tsub) {
    const std::uint64_t t_mask = (tsub << 1) | 1u;
    if (t_mask == s_mask) continue;  // identity on the optimum's own edges is covered anyway
    // overlap(T, U) per candidate U
    Rational best_val(-1);
    std::vector<std::uint64_t> best_masks;
    for (std::uint64_t usub = 0; usub < count; ++usub) {
      const std::uint64_t u_mask = (usub << 1) | 1u;
      Rational overlap = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const bool in_t = ((t_mask >> es[i].u) ^ (t_mask >> es[i].v)) & 1u;
        if (!in_t) continue;
        const bool in_u = ((u_mask >> es[i].u) ^ (u_mask >> es[i].v)) & 1u;
        if (in_u) overlap += wr[i];
      }
      Rational val = base[usub] + (gamma_r - 1) * overlap;
      if (best_masks.empty() || val > best_val) {
        best_val = val;
        best_masks.assign(1, u_mask);
      } else if (val == best_val) {
        best_masks.push_back(u_mask);
      }
    }
    ++out.adversarial_checked;
    for (std::uint64_t u_mask : best_masks) {
      if (!inside(u_mask)) {
        out.consistent = false;
        out.counterexample = adversarial_perturbation(g, Cut::from_mask(n, t_mask), gamma);
        out.offending_optimum = Cut::from_mask(n, u_mask);
        return out;
      }
    }
  }
  return out;
}

}  // namespace stablecut
