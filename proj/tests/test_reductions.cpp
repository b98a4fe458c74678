#include <catch2/catch_amalgamated.hpp>

#include "stablecut/oracles.hpp"
#include "stablecut/reductions.hpp"

using Catch::Approx;
using namespace stablecut;

TEST_CASE("the doubling gadget transfers the sparsity ratio", "[reductions]") {
  // one capacity-3 edge, one unit demand: phi* = 3
  SparsestCutInstance inst;
  inst.n = 2;
  inst.capacity = {Edge{0, 1, 3.0}};
  inst.demands = {DemandPair{0, 1, 1.0}};
  REQUIRE(brute_sparsest_cut(inst).phi == Approx(3.0));

  SECTION("symmetric capacity pairs keep the full margin") {
    const auto art = sc_to_maxcut(inst, 2.0);
    REQUIRE(art.base_n == 2);
    REQUIRE(art.graph.n() == 4);
    // light weight: two capacity images (3 each) + two demand images (1 each)
    REQUIRE(art.W_inf == Approx(2.0 * 2.0 * 8.0 + 1.0));
    REQUIRE(art.heavy_edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
    REQUIRE(art.planted.members() == std::vector<int>{0, 1});
    for (const auto& [u, v] : art.heavy_edges) REQUIRE(art.planted.separates(u, v));

    const auto rep = maxcut_stability_report(art.graph);
    REQUIRE(rep.optimal_cut.same_bipartition(art.planted));
    REQUIRE(rep.unique_optimum);
    REQUIRE(rep.margin == ExtRatio(Rational(3), Rational(1)));
    REQUIRE(rep.stable(2.0));
  }
  SECTION("the one-orientation variant halves the margin") {
    const auto art = sc_to_maxcut(inst, 2.0, /*symmetric_capacity=*/false);
    REQUIRE(art.W_inf == Approx(2.0 * 2.0 * 5.0 + 1.0));
    const auto rep = maxcut_stability_report(art.graph);
    REQUIRE(rep.optimal_cut.same_bipartition(art.planted));
    REQUIRE(rep.margin == ExtRatio(Rational(3), Rational(2)));
    REQUIRE_FALSE(rep.stable(2.0));
  }
  SECTION("gamma below 1 is rejected") {
    REQUIRE_THROWS_AS(sc_to_maxcut(inst, 0.5), instance_error);
  }
}

TEST_CASE("deviating cuts price capacity against demand", "[reductions]") {
  // richer source: a 4-cycle with two crossing demands; the sparsest cut
  // splits the cycle into opposite pairs at phi* = 2
  SparsestCutInstance inst;
  inst.n = 4;
  inst.capacity = {Edge{0, 1, 2.0}, Edge{1, 2, 1.0}, Edge{2, 3, 2.0}, Edge{0, 3, 1.0}};
  inst.demands = {DemandPair{0, 2, 0.5}, DemandPair{1, 3, 0.5}};
  const auto sc = brute_sparsest_cut(inst);
  const auto art = sc_to_maxcut(inst, 1.25);
  const auto rep = maxcut_stability_report(art.graph);
  REQUIRE(rep.optimal_cut.same_bipartition(art.planted));
  // the binding competitor flips one base cut across both copies, so the
  // transferred margin is exactly phi*
  REQUIRE(rep.margin == sc.phi_exact);
  REQUIRE(rep.stable(1.25));

  SECTION("the margin witness realizes the sparsest base cut") {
    REQUIRE(rep.witness.has_value());
    // flip set of the witness relative to the planted cut
    std::vector<int> flipped;
    for (int u = 0; u < inst.n; ++u)
      if (rep.witness->canonical().side(u) != art.planted.canonical().side(u))
        flipped.push_back(u);
    Cut base_cut(inst.n, flipped);
    REQUIRE(sparsity(inst, base_cut).value() == Approx(sc.phi));
  }
}

TEST_CASE("the clustering gadget satisfies the agreement identity",
          "[reductions]") {
  const SignedGraph sg(4, {SignedEdge{0, 1, 2.0, Sign::plus},
                           SignedEdge{1, 2, 3.0, Sign::minus},
                           SignedEdge{2, 3, 1.0, Sign::plus},
                           SignedEdge{0, 3, 4.0, Sign::minus},
                           SignedEdge{0, 2, 2.0, Sign::plus}});
  const auto red = cc2_to_maxcut(sg, 2.0);
  REQUIRE(red.base_n == 4);
  REQUIRE(red.graph.n() == 8);
  REQUIRE(red.W_inf == Approx(2.0 * 2.0 * 12.0 + 1.0));

  const Rational offset = Rational(4) * exact_rational(red.W_inf);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const Cut clustering = Cut::from_mask(4, mask);
    std::vector<bool> in_first(4);
    for (int v = 0; v < 4; ++v) in_first[static_cast<std::size_t>(v)] = clustering.side(v);
    const Cut mapped = red.clustering_to_cut(clustering);
    // exact form of: agreement = mapped cut weight - n * W_inf
    REQUIRE(agree_weight_exact(sg, in_first) ==
            cut_weight_exact(red.graph, mapped) - offset);
    REQUIRE(red.cut_to_clustering(mapped).same_bipartition(clustering));
  }

  SECTION("the reduced maximum cut is the best clustering") {
    const auto brute = brute_max_cut(red.graph);
    const Cut best_clustering = red.cut_to_clustering(brute.cut.canonical());
    Rational best_agree = 0;
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      std::vector<bool> in_first(4);
      for (int v = 0; v < 4; ++v) in_first[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
      const Rational a = agree_weight_exact(sg, in_first);
      if (a > best_agree) best_agree = a;
    }
    std::vector<bool> found(4);
    for (int v = 0; v < 4; ++v) found[static_cast<std::size_t>(v)] = best_clustering.side(v);
    REQUIRE(agree_weight_exact(sg, found) == best_agree);
  }
  SECTION("cuts that keep a heavy pair together have no clustering preimage") {
    const Cut bogus(8, {});
    REQUIRE_THROWS_AS(red.cut_to_clustering(bogus), instance_error);
  }
  SECTION("gamma below 1 is rejected") {
    REQUIRE_THROWS_AS(cc2_to_maxcut(sg, 0.9), instance_error);
  }
}
