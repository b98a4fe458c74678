// Acceptance battery: ten end-to-end criteria covering the exact robust
// algorithms, the rounding guarantees, the generators, and the reduction
// identities.  Prints one PASS/FAIL line per criterion; the exit code is the
// number of failures.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stablecut/generators.hpp"
#include "stablecut/local_search.hpp"
#include "stablecut/multiway_lp.hpp"
#include "stablecut/oracles.hpp"
#include "stablecut/reductions.hpp"
#include "stablecut/report.hpp"
#include "stablecut/sdp.hpp"
#include "stablecut/sparsest_cut.hpp"

using namespace stablecut;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

void line(int idx, bool pass, const std::string& detail) {
  std::printf("C%d %s %s\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

WeightedGraph random_graph(int n, std::mt19937_64& rng, double p, int wmax) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) <= p)
        es.push_back(Edge{u, v, static_cast<double>(uniform_int(rng, 1, wmax))});
  if (es.empty()) es.push_back(Edge{0, 1, static_cast<double>(uniform_int(rng, 1, wmax))});
  return WeightedGraph(n, es);
}

WeightedGraph cycle(int n) {
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v) es.push_back(Edge{v, (v + 1) % n, 1.0});
  return WeightedGraph(n, es);
}

WeightedGraph path(int n) {
  std::vector<Edge> es;
  for (int v = 0; v + 1 < n; ++v) es.push_back(Edge{v, v + 1, 1.0});
  return WeightedGraph(n, es);
}

// 1. Soundness of the robust max-cut algorithm: whenever it claims OPTIMAL,
//    the value matches brute force within 1e-6 * W.  Budget: 60 s.
void criterion_1() {
  WallClock clock;
  const int total = 200;
  int optimal = 0, certificates = 0;
  double max_dev = 0.0;
  bool sound = true;
  for (int i = 0; i < total; ++i) {
    std::mt19937_64 rng(splitmix64(9000 + static_cast<std::uint64_t>(i)));
    const int n = 4 + i % 7;  // n in [4, 10]
    const WeightedGraph g = random_graph(n, rng, 0.5, 10);
    const auto r = robust_max_cut(g);
    if (r.status == RobustStatus::optimal) {
      ++optimal;
      const auto brute = brute_max_cut(g);
      const double dev = std::abs(r.cut_value - brute.value);
      if (dev > max_dev) max_dev = dev;
      if (dev > 1e-6 * std::max(1.0, g.total_weight())) sound = false;
    } else {
      ++certificates;
    }
  }
  const double secs = clock.elapsed_ms() / 1000.0;
  line(1, sound && secs <= 60.0,
       fmt("robust max cut sound on %d random graphs (n 4..10): %d optimal, %d certificates, "
           "max value deviation %.1e, %.1fs (budget 60s)",
           total, optimal, certificates, max_dev, secs));
}

// 2. On instances with oracle-verified multiway margin > 4, the relaxation is
//    integral to 1e-6 and its partition is the brute optimum.
void criterion_2() {
  const int total = 100;
  int done = 0;
  double max_dev = 0.0;
  bool ok = true;
  for (int i = 0; i < total && ok; ++i) {
    const int n = 8 + i % 5;        // 8..12
    const int k = 2 + (i / 5) % 2;  // 2 or 3
    const auto gen = generate_stable_multiway(n, k, 4.0, 2000 + static_cast<std::uint64_t>(i));
    const auto rep = multiway_stability_report(gen.graph, gen.terminals);
    if (!rep.margin.greater_than(Rational(4))) { ok = false; break; }
    const auto sol = solve_ckr(build_ckr_lp(gen.graph, gen.terminals));
    const auto chk = check_lp_integrality(sol);
    const auto brute = brute_multiway_cut(gen.graph, gen.terminals);
    if (chk.max_deviation > max_dev) max_dev = chk.max_deviation;
    if (!chk.integral || chk.max_deviation > 1e-6 || chk.partition.part != brute.partition.part)
      ok = false;
    else
      ++done;
  }
  line(2, ok && done == total,
       fmt("ckr lp integral and brute-optimal on %d/%d margin>4 instances (n 8..12, k 2..3), "
           "max coordinate deviation %.1e",
           done, total, max_dev));
}

// 3. Strictness boundary on the 3-star: heavy arm 4 sits exactly at margin 4
//    (not 4-stable); heavy arm 5 has margin 5 and an integral lp of cost 2.
void criterion_3() {
  const auto rep4 = multiway_stability_report(star_graph(4.0), star_terminals());
  const auto rep5 = multiway_stability_report(star_graph(5.0), star_terminals());
  const auto sol = solve_ckr(build_ckr_lp(star_graph(5.0), star_terminals()));
  const auto chk = check_lp_integrality(sol);
  const bool ok = rep4.margin == ExtRatio(Rational(4), Rational(1)) && !rep4.stable(4.0) &&
                  rep5.margin == ExtRatio(Rational(5), Rational(1)) && rep5.stable(4.0) &&
                  chk.integral && std::abs(sol.objective - 2.0) <= 1e-7;
  line(3, ok,
       fmt("star margins exact: heavy 4 -> margin 4/1 not 4-stable, heavy 5 -> margin 5/1, "
           "lp objective %.9f integral=%d",
           sol.objective, chk.integral ? 1 : 0));
}

// 4. Rounding rate bounds on fractional embeddings: for every vertex pair,
//    Pr[separated] <= 2d/(1+d) + 5se and Pr[together] >= (1-d)/2 - 5se over
//    n = 1e5 samples; terminals never leave their parts.  Budget: 120 s.
void criterion_4() {
  WallClock clock;
  const long N = 100000;
  const int configs = 20;
  int checked_pairs = 0;
  long misses = 0;
  bool ok = true;
  for (int c = 0; c < configs && ok; ++c) {
    std::mt19937_64 rng(splitmix64(7777 + static_cast<std::uint64_t>(c)));
    const int k = 2 + c % 2;
    const int n = k + 2 + c % 3;
    Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(n, k);
    std::vector<int> terminals;
    for (int j = 0; j < k; ++j) {
      pts(j, j) = 1.0;
      terminals.push_back(j);
    }
    for (int v = k; v < n; ++v) {  // interior points, Dirichlet(1,...,1)
      double s = 0.0;
      for (int j = 0; j < k; ++j) {
        pts(v, j) = -std::log(uniform01(rng));
        s += pts(v, j);
      }
      for (int j = 0; j < k; ++j) pts(v, j) /= s;
    }
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    const auto stats = kt_sampling_stats(pts, terminals, pairs, N, 4242 + c);
    misses += stats.terminal_misses;
    if (stats.terminal_misses != 0) ok = false;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const double d =
          0.5 * (pts.row(pairs[pi].first) - pts.row(pairs[pi].second)).cwiseAbs().sum();
      const double phat = static_cast<double>(stats.separated[pi]) / N;
      const double se = std::sqrt(std::max(phat * (1.0 - phat), 0.0) / N);
      if (phat > 2.0 * d / (1.0 + d) + 5.0 * se) ok = false;
      if (1.0 - phat < (1.0 - d) / 2.0 - 5.0 * se) ok = false;
      ++checked_pairs;
    }
  }
  const double secs = clock.elapsed_ms() / 1000.0;
  line(4, ok && secs <= 120.0,
       fmt("rounding bounds hold for %d pairs over %d embeddings x %ld samples, "
           "terminal misses %ld, %.1fs (budget 120s)",
           checked_pairs, configs, N, misses, secs));
}

// 5. Relaxation properties: dominance over brute force, integrality on
//    connected bipartite fixtures, the unit-triangle value 2, and the flip
//    identity on random feasible grams.
void criterion_5() {
  bool dominance = true;
  double min_slack = 1e9;
  {
    std::vector<WeightedGraph> fixtures{
        cycle(3),
        cycle(4),
        cycle(5),
        WeightedGraph(3, {Edge{0, 1, 4.0}, Edge{0, 2, 2.0}, Edge{1, 2, 1.0}}),
        WeightedGraph(4, {Edge{0, 1, 5.0}, Edge{0, 2, 1.0}, Edge{0, 3, 1.0}}),
        path(5),
        cycle(6)};
    for (int i = 0; i < 3; ++i) {
      std::mt19937_64 rng(splitmix64(8800 + static_cast<std::uint64_t>(i)));
      fixtures.push_back(random_graph(8 + i, rng, 0.5, 10));
    }
    fixtures.push_back(generate_stable_maxcut(8, 2.0, 7).graph);
    for (const auto& g : fixtures) {
      const auto sol = solve_sdp(build_sdp(g));
      const auto brute = brute_max_cut(g);
      const double slack = sol.value - brute.value;
      if (slack < min_slack) min_slack = slack;
      if (sol.value < brute.value - 1e-6 * std::max(1.0, g.total_weight())) dominance = false;
    }
  }

  bool bipartite_ok = true;
  {
    const std::vector<WeightedGraph> bips{
        cycle(4), cycle(6), path(5),
        WeightedGraph(4, {Edge{0, 1, 5.0}, Edge{0, 2, 1.0}, Edge{0, 3, 1.0}}),
        WeightedGraph(5, {Edge{0, 2, 1.0}, Edge{0, 3, 1.0}, Edge{0, 4, 1.0}, Edge{1, 2, 1.0},
                          Edge{1, 3, 1.0}, Edge{1, 4, 1.0}})};  // K_{2,3}
    for (const auto& g : bips) {
      const auto r = robust_max_cut(g);
      const auto rep = maxcut_stability_report(g);
      if (r.status != RobustStatus::optimal || !r.integrality.integral ||
          !rep.margin.is_infinite())
        bipartite_ok = false;
    }
  }

  const auto tri = solve_sdp(build_sdp(cycle(3)));
  const bool triangle_ok = std::abs(tri.value - 2.0) <= 1e-5 &&
                           !check_integrality(tri.gram, 1e-4).integral;

  bool flip_ok = true;
  double max_residual = 0.0;
  {
    std::mt19937_64 rng(splitmix64(31337));
    const WeightedGraph g = random_graph(6, rng, 0.7, 9);
    for (int t = 0; t < 50; ++t) {
      Eigen::MatrixXd V(6, 6);  // random unit vectors -> feasible gram
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) V(i, j) = uniform_real(rng, -1.0, 1.0);
        V.row(i).normalize();
      }
      const Eigen::MatrixXd X = V * V.transpose();
      const Cut s = Cut::from_mask(6, uniform_below(rng, 64));
      const double res = flip_identity_residual(g, X, s);
      if (res > max_residual) max_residual = res;
      if (res > 1e-9) flip_ok = false;
    }
  }

  line(5, dominance && bipartite_ok && triangle_ok && flip_ok,
       fmt("sdp dominates brute (min slack %.1e), bipartite fixtures integral=%d, "
           "unit triangle value %.6f, flip residual max %.1e over 50 grams",
           min_slack, bipartite_ok ? 1 : 0, tri.value, max_residual));
}

// 6. Reduction soundness: generated sparsest-cut sources with brute phi* > g
//    reduce to max-cut instances whose oracle margin clears g and whose brute
//    optimum is the planted cut.
void criterion_6() {
  const double gammas[] = {1.5, 2.0, 3.0};
  const Rational bounds[] = {Rational(3, 2), Rational(2), Rational(3)};
  const int ns[] = {6, 8, 10};
  const int total = 51;
  int done = 0;
  bool ok = true;
  for (int i = 0; i < total && ok; ++i) {
    const int gi = i % 3;
    const auto gen =
        generate_stable_maxcut(ns[(i / 3) % 3], gammas[gi], 3000 + static_cast<std::uint64_t>(i));
    const auto sc = brute_sparsest_cut(gen.source);
    const auto rep = maxcut_stability_report(gen.graph);
    if (!sc.phi_exact.greater_than(bounds[gi]) || !rep.margin.greater_than(bounds[gi]) ||
        !rep.optimal_cut.same_bipartition(gen.planted) || !rep.unique_optimum)
      ok = false;
    else
      ++done;
  }
  line(6, ok && done == total,
       fmt("reduction margin clears gamma in {1.5, 2, 3} with planted = brute on %d/%d "
           "generated instances",
           done, total));
}

// 7. Weakly stable max cut: the local search lands within delta*n of the
//    planted cut on oracle-verified (5, 0.2)-weakly-stable instances, inside
//    the 4m^3 + m trace bound.
void criterion_7() {
  const ExactSparsestCut exact;
  const int total = 30;
  int done = 0;
  long max_iterations = 0;
  int max_distance = 0;
  bool ok = true;
  for (int i = 0; i < total && ok; ++i) {
    const int n = (i % 2 == 0) ? 8 : 10;
    const auto gen = generate_weakly_stable_maxcut(n, 5.0, 0.2, 4000 + static_cast<std::uint64_t>(i));
    const auto weak = weak_stability_check(gen.graph, 5.0, 0.2);
    if (!weak.stable) { ok = false; break; }
    const auto res = weakly_stable_max_cut(gen.graph, exact);
    const double md = static_cast<double>(gen.graph.m());
    const long bound = static_cast<long>(4.0 * md * md * md + md);
    const int dist = res.cut.bipartition_distance(gen.planted);
    if (res.trace.iterations > max_iterations) max_iterations = res.trace.iterations;
    if (dist > max_distance) max_distance = dist;
    if (dist > 0.2 * n + 1e-9 || res.trace.iterations > bound) ok = false;
    else ++done;
  }
  line(7, ok && done == total,
       fmt("local search within delta*n of planted on %d/%d weakly stable instances, "
           "max distance %d, max trace %ld iterations",
           done, total, max_distance, max_iterations));
}

// 8. Weakly stable multiway: accepted improvement rounds never exceed the
//    integer starting cost, and the final partition is the brute optimum on
//    every fixture with margin above 4.
void criterion_8() {
  struct Fixture {
    WeightedGraph g;
    std::vector<int> terminals;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({star_graph(5.0), star_terminals()});
  fixtures.push_back({WeightedGraph(5, {Edge{0, 3, 1.0}, Edge{2, 3, 6.0}, Edge{2, 4, 6.0},
                                        Edge{3, 4, 1.0}}),
                      {0, 1, 2}});
  for (std::uint64_t seed : {31u, 47u, 52u, 68u}) {
    auto gen = generate_stable_multiway(10, 3, 4.0, seed);
    fixtures.push_back({gen.graph, gen.terminals});
  }
  int done = 0;
  bool ok = true;
  for (std::size_t i = 0; i < fixtures.size() && ok; ++i) {
    const auto& f = fixtures[i];
    const auto rep = multiway_stability_report(f.g, f.terminals);
    if (!rep.margin.greater_than(Rational(4))) { ok = false; break; }
    const auto res = weakly_stable_multiway(f.g, f.terminals, 0, 70 + static_cast<std::uint64_t>(i));
    const auto brute = brute_multiway_cut(f.g, f.terminals);
    const double initial = res.trace.steps.empty() ? res.cost : res.trace.steps.front().before;
    if (static_cast<double>(res.trace.accepted) > initial ||
        res.partition.part != brute.partition.part || std::abs(res.cost - brute.value) > 1e-9)
      ok = false;
    else
      ++done;
  }
  line(8, ok && done == static_cast<int>(fixtures.size()),
       fmt("multiway local search matches brute on %d/%d margin>4 integer fixtures within the "
           "initial-cost round bound",
           done, static_cast<int>(fixtures.size())));
}

// 9. Stability certification vs direct perturbation: the margin verdict is
//    never contradicted by 50 sampled gamma-perturbations plus the exact
//    adversarial one, in either direction.
void criterion_9() {
  const int total = 100;
  int done = 0, stable_count = 0;
  bool ok = true;
  for (int i = 0; i < total && ok; ++i) {
    std::mt19937_64 rng(splitmix64(5000 + static_cast<std::uint64_t>(i)));
    const int n = 4 + i % 4;  // 4..7
    const WeightedGraph g = random_graph(n, rng, 0.6, 8);
    const auto rep = maxcut_stability_report(g);
    bool agree = true;
    for (double gamma : {1.2, 2.0}) {
      const auto cc = perturbation_cross_check(g, gamma, 50, 6000 + static_cast<std::uint64_t>(i));
      if (rep.stable(gamma) != cc.consistent) agree = false;
      if (gamma == 2.0 && rep.stable(gamma)) ++stable_count;
    }
    if (!agree) ok = false;
    else ++done;
  }
  line(9, ok && done == total,
       fmt("margin certification matches perturbation re-optimization on %d/%d random graphs "
           "(gamma 1.2 and 2.0; %d were 2-stable)",
           done, total, stable_count));
}

// 10. Clustering agreement identity: Agree(C) equals the mapped cut weight
//     minus n * W_inf for every clustering, in exact arithmetic.
void criterion_10() {
  const std::vector<SignedGraph> fixtures{
      SignedGraph(4, {SignedEdge{0, 1, 2.0, Sign::plus}, SignedEdge{1, 2, 3.0, Sign::minus},
                      SignedEdge{2, 3, 1.0, Sign::plus}, SignedEdge{0, 3, 4.0, Sign::minus},
                      SignedEdge{0, 2, 2.0, Sign::plus}}),
      SignedGraph(5, {SignedEdge{0, 1, 1.0, Sign::plus}, SignedEdge{0, 2, 2.0, Sign::minus},
                      SignedEdge{1, 3, 4.0, Sign::plus}, SignedEdge{2, 4, 1.0, Sign::minus},
                      SignedEdge{3, 4, 2.0, Sign::plus}, SignedEdge{1, 4, 3.0, Sign::minus}}),
      SignedGraph(6, {SignedEdge{0, 1, 2.0, Sign::minus}, SignedEdge{1, 2, 1.0, Sign::plus},
                      SignedEdge{2, 3, 5.0, Sign::minus}, SignedEdge{3, 4, 2.0, Sign::plus},
                      SignedEdge{4, 5, 1.0, Sign::minus}, SignedEdge{0, 5, 3.0, Sign::plus},
                      SignedEdge{1, 4, 2.0, Sign::plus}, SignedEdge{0, 3, 1.0, Sign::minus}})};
  long clusterings = 0;
  bool ok = true;
  for (const auto& sg : fixtures) {
    const auto red = cc2_to_maxcut(sg, 2.0);
    const int n = red.base_n;
    const Rational offset = Rational(n) * exact_rational(red.W_inf);
    for (std::uint64_t mask = 0; mask < (1ull << n) && ok; ++mask) {
      const Cut clustering = Cut::from_mask(n, mask);
      std::vector<bool> in_first(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) in_first[static_cast<std::size_t>(v)] = clustering.side(v);
      const Cut mapped = red.clustering_to_cut(clustering);
      if (agree_weight_exact(sg, in_first) !=
              cut_weight_exact(red.graph, mapped) - offset ||
          !red.cut_to_clustering(mapped).same_bipartition(clustering))
        ok = false;
      ++clusterings;
    }
  }
  line(10, ok,
       fmt("agreement identity exact for %ld clusterings over %d signed fixtures (n 4..6)",
           clusterings, static_cast<int>(fixtures.size())));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  return g_failures;
}
