#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stablecut/generators.hpp"
#include "stablecut/local_search.hpp"
#include "stablecut/multiway_lp.hpp"
#include "stablecut/oracles.hpp"

using Catch::Approx;
using namespace stablecut;

TEST_CASE("ckr lp assembly has the documented shape", "[multiway]") {
  const auto g = star_graph(5.0);
  const auto terminals = star_terminals();
  const auto p = build_ckr_lp(g, terminals);
  REQUIRE(p.n == 4);
  REQUIRE(p.k == 3);
  REQUIRE(p.m == 3);
  REQUIRE(p.lp.A.rows() == 4 + 9 + 9);
  REQUIRE(p.lp.A.cols() == 12 + 18);
  // simplex row of vertex 2 touches exactly its own block
  REQUIRE(p.lp.A(2, p.var_u(2, 0)) == 1.0);
  REQUIRE(p.lp.A(2, p.var_u(2, 2)) == 1.0);
  REQUIRE(p.lp.A(2, p.var_u(1, 0)) == 0.0);
  REQUIRE(p.lp.b(2) == 1.0);
  // terminal 2 (vertex 3) is pinned to coordinate 2
  REQUIRE(p.lp.b(4 + 2 * 3 + 2) == 1.0);
  REQUIRE(p.lp.b(4 + 2 * 3 + 0) == 0.0);
  // each difference variable costs w/2
  REQUIRE(p.lp.c(p.var_p(0, 0)) == Approx(2.5));
  REQUIRE(p.lp.c(p.var_q(0, 0)) == Approx(2.5));
  SECTION("the row cap rejects oversized programs") {
    // complete graph on 41 vertices with 5 terminals: 41 + 25 + 820*5 = 4166 rows
    std::vector<Edge> es;
    const int n = 41;
    for (int v = 0; v < n; ++v)
      for (int u = v + 1; u < n; ++u) es.push_back(Edge{v, u, 1.0});
    REQUIRE_THROWS_AS(build_ckr_lp(WeightedGraph(n, es), {0, 1, 2, 3, 4}), size_cap_error);
  }
}

TEST_CASE("the relaxation solves the heavy star integrally", "[multiway]") {
  const auto p = build_ckr_lp(star_graph(5.0), star_terminals());
  const auto sol = solve_ckr(p);
  REQUIRE(sol.objective == Approx(2.0).margin(1e-7));
  // terminals sit on their basis vectors, the center joins the heavy arm
  REQUIRE(sol.points(1, 0) == 1.0);
  REQUIRE(sol.points(2, 1) == 1.0);
  REQUIRE(sol.points(3, 2) == 1.0);
  REQUIRE(sol.points(0, 0) == Approx(1.0).margin(1e-7));
  REQUIRE(sol.d(0, 1) == Approx(0.0).margin(1e-7));
  REQUIRE(sol.d(0, 2) == Approx(1.0).margin(1e-7));

  const auto chk = check_lp_integrality(sol);
  REQUIRE(chk.integral);
  REQUIRE(chk.partition.part == std::vector<int>{0, 0, 1, 2});
  REQUIRE(chk.max_deviation <= 1e-6);
}

TEST_CASE("lp integrality detection on hand matrices", "[multiway]") {
  Eigen::MatrixXd pts(3, 3);
  pts << 1.0, 0.0, 0.0,
         0.0, 1.0, 0.0,
         0.5, 0.5, 0.0;
  CkrSolution sol;
  sol.points = pts;
  const auto chk = check_lp_integrality(sol);
  REQUIRE_FALSE(chk.integral);
  REQUIRE(chk.witness_vertex == 2);
  REQUIRE(chk.max_deviation == Approx(0.5));

  sol.points(2, 0) = 1.0;
  sol.points(2, 1) = 0.0;
  const auto ok = check_lp_integrality(sol);
  REQUIRE(ok.integral);
  REQUIRE(ok.partition.part == std::vector<int>{0, 1, 0});
}

TEST_CASE("robust multiway cut on the star family", "[multiway]") {
  const auto terminals = star_terminals();
  SECTION("heavy arm 5: certified optimal") {
    const auto r = robust_multiway_cut(star_graph(5.0), terminals);
    REQUIRE(r.status == MultiwayStatus::optimal);
    REQUIRE(r.cost == Approx(2.0));
    REQUIRE(r.partition->part == std::vector<int>{0, 0, 1, 2});
  }
  SECTION("heavy arm 4: the basic optimum is still the integral vertex") {
    const auto r = robust_multiway_cut(star_graph(4.0), terminals);
    REQUIRE(r.status == MultiwayStatus::optimal);
    REQUIRE(r.cost == Approx(2.0));
  }
  SECTION("unit star: ties, but the lp optimum matches the brute value") {
    const auto r = robust_multiway_cut(star_graph(1.0), terminals);
    REQUIRE(r.solution.objective == Approx(2.0).margin(1e-7));
    if (r.status == MultiwayStatus::optimal) REQUIRE(r.cost == Approx(2.0));
  }
}

TEST_CASE("rounding keeps terminals home and meets its rate bounds", "[multiway]") {
  // two terminals on basis vectors plus a midpoint vertex
  Eigen::MatrixXd pts(4, 3);
  pts << 1.0, 0.0, 0.0,
         0.0, 1.0, 0.0,
         0.0, 0.0, 1.0,
         0.5, 0.5, 0.0;
  const std::vector<int> terminals{0, 1, 2};

  SECTION("every sample assigns terminals to their own parts") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const KtRound r = kt_round(pts, terminals, seed);
      REQUIRE(r.partition.part[0] == 0);
      REQUIRE(r.partition.part[1] == 1);
      REQUIRE(r.partition.part[2] == 2);
      REQUIRE(r.partition.part[3] >= 0);
      REQUIRE(r.phases <= kt_phase_cap(4, 3));
    }
  }
  SECTION("separation frequencies respect both phase bounds") {
    // a single phase separates (u, v) with probability at most
    // 2 d(u,v) / (1 + d(u,v)) of its assignment rate, and keeps them
    // together with probability at least (1 - d) / 2; chaining phases
    // preserves both, which is where the factor-4 guarantee comes from
    const long N = 20000;
    const std::vector<std::pair<int, int>> pairs{{3, 0}, {3, 2}, {0, 1}};
    const auto stats = kt_sampling_stats(pts, terminals, pairs, N, 99);
    REQUIRE(stats.samples == N);
    REQUIRE(stats.terminal_misses == 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double d = 0.5 * (pts.row(pairs[i].first) - pts.row(pairs[i].second))
                                 .cwiseAbs()
                                 .sum();
      const double phat = static_cast<double>(stats.separated[i]) / N;
      const double se = std::sqrt(std::max(phat * (1.0 - phat), 1e-12) / N);
      REQUIRE(phat <= 2.0 * d / (1.0 + d) + 5.0 * se);
      REQUIRE(1.0 - phat >= (1.0 - d) / 2.0 - 5.0 * se);
    }
    // the terminal pair (0,1) is at distance 1: always separated
    REQUIRE(stats.separated[2] == N);
  }
  SECTION("stats are reproducible for a fixed seed") {
    const std::vector<std::pair<int, int>> pairs{{3, 0}, {3, 2}};
    const auto a = kt_sampling_stats(pts, terminals, pairs, 2000, 5);
    const auto b = kt_sampling_stats(pts, terminals, pairs, 2000, 5);
    REQUIRE(a.separated == b.separated);
    REQUIRE(a.mean_phases == b.mean_phases);
    // stream seeds are base xor s, so two bases inside the same 64-aligned
    // block merely permute the same stream set and merge to identical counts;
    // pick the contrast seed from a different block
    const auto c = kt_sampling_stats(pts, terminals, pairs, 2000, 999);
    REQUIRE((a.separated != c.separated || a.mean_phases != c.mean_phases));
  }
}

TEST_CASE("robust multiway agrees with brute force on generated instances",
          "[multiway]") {
  for (std::uint64_t seed : {3u, 11u, 21u}) {
    const auto gen = generate_stable_multiway(9, 3, 4.0, seed);
    const auto r = robust_multiway_cut(gen.graph, gen.terminals);
    const auto brute = brute_multiway_cut(gen.graph, gen.terminals);
    REQUIRE(r.status == MultiwayStatus::optimal);
    REQUIRE(r.cost == Approx(brute.value));
    REQUIRE(r.partition->part == brute.partition.part);
    REQUIRE(r.partition->part == gen.planted.part);
  }
}
