#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stablecut/generators.hpp"
#include "stablecut/io.hpp"

using Catch::Approx;
using namespace stablecut;

TEST_CASE("the star family and random sources", "[generators]") {
  const auto g = star_graph(5.0);
  REQUIRE(g.n() == 4);
  REQUIRE(g.m() == 3);
  REQUIRE(g.edges()[0].w == 5.0);
  REQUIRE(star_terminals() == std::vector<int>{1, 2, 3});

  SECTION("random sparsest-cut sources are valid and reproducible") {
    std::mt19937_64 a(12), b(12), c(13);
    const auto ia = random_sparsest_cut_instance(6, a);
    const auto ib = random_sparsest_cut_instance(6, b);
    const auto ic = random_sparsest_cut_instance(6, c);
    validate_sparsest_cut(ia);
    REQUIRE(ia.capacity.size() == ib.capacity.size());
    for (std::size_t i = 0; i < ia.capacity.size(); ++i) {
      REQUIRE(ia.capacity[i].u == ib.capacity[i].u);
      REQUIRE(ia.capacity[i].w == ib.capacity[i].w);
      REQUIRE(ia.capacity[i].w >= 1.0);
      REQUIRE(ia.capacity[i].w <= 10.0);
    }
    REQUIRE(ia.demands.size() == ib.demands.size());
    REQUIRE(ia.demands.size() <= 6);
    // a different seed changes the draw
    REQUIRE((ia.capacity.size() != ic.capacity.size() ||
             ia.capacity[1].w != ic.capacity[1].w ||
             ia.demands[0].u != ic.demands[0].u));
  }
}

TEST_CASE("stable max-cut instances come out certified", "[generators]") {
  const auto gen = generate_stable_maxcut(8, 2.0, 7);
  REQUIRE(gen.graph.n() == 8);
  REQUIRE(gen.gamma == 2.0);
  REQUIRE(gen.phi_star > 2.0);
  REQUIRE(gen.margin.greater_than(Rational(2)));

  SECTION("pinned values for seed 7") {
    REQUIRE(gen.phi_star == Approx(16.0 / 7.0));
    REQUIRE(gen.halvings == 4);
    REQUIRE(brute_max_cut(gen.graph).value == Approx(674.0));
  }
  SECTION("the planted cut is the unique optimum at the stated margin") {
    const auto rep = maxcut_stability_report(gen.graph);
    REQUIRE(rep.optimal_cut.same_bipartition(gen.planted));
    REQUIRE(rep.unique_optimum);
    REQUIRE(rep.margin == gen.margin);
    REQUIRE(rep.stable(2.0));
  }
  SECTION("identical seeds give byte-identical instances") {
    const auto again = generate_stable_maxcut(8, 2.0, 7);
    Instance a = instance_from_graph(gen.graph);
    Instance b = instance_from_graph(again.graph);
    REQUIRE(serialize_instance(a) == serialize_instance(b));
  }
  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(generate_stable_maxcut(7, 2.0, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_maxcut(2, 2.0, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_maxcut(8, 0.5, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_maxcut(26, 2.0, 1), size_cap_error);
    // demands halve at most 40 times; an absurd gamma cannot be cleared
    REQUIRE_THROWS_AS(generate_stable_maxcut(8, 1e15, 1), generation_error);
  }
}

TEST_CASE("weakly stable instances sit between the two notions", "[generators]") {
  const auto gen = generate_weakly_stable_maxcut(10, 5.0, 0.2, 4);
  REQUIRE(gen.graph.n() == 10);
  REQUIRE(gen.floaters == 2);

  SECTION("pinned draw for seed 4") {
    REQUIRE(gen.attempts == 1);
    REQUIRE(gen.margin == ExtRatio(Rational(2), Rational(1)));
    REQUIRE(gen.planted.canonical().members() == std::vector<int>{0, 2, 4, 6, 8});
  }
  SECTION("weakly stable but not strictly stable") {
    const auto rep = maxcut_stability_report(gen.graph);
    REQUIRE(rep.optimal_cut.same_bipartition(gen.planted));
    REQUIRE_FALSE(rep.stable(5.0));
    REQUIRE(weak_stability_check(gen.graph, 5.0, 0.2).stable);
  }
  SECTION("identical seeds reproduce the instance") {
    const auto again = generate_weakly_stable_maxcut(10, 5.0, 0.2, 4);
    REQUIRE(serialize_instance(instance_from_graph(gen.graph)) ==
            serialize_instance(instance_from_graph(again.graph)));
  }
  SECTION("zero floaters degenerate to a plainly stable core") {
    const auto solid = generate_weakly_stable_maxcut(4, 5.0, 0.0, 1);
    REQUIRE(solid.floaters == 0);
    REQUIRE(maxcut_stability_report(solid.graph).stable(5.0));
  }
  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(generate_weakly_stable_maxcut(3, 5.0, 0.2, 1), instance_error);
    REQUIRE_THROWS_AS(generate_weakly_stable_maxcut(10, 0.9, 0.2, 1), instance_error);
    REQUIRE_THROWS_AS(generate_weakly_stable_maxcut(10, 5.0, 1.5, 1), instance_error);
    // delta 0.9 on n = 4 leaves a single core vertex
    REQUIRE_THROWS_AS(generate_weakly_stable_maxcut(4, 5.0, 0.9, 1), generation_error);
    // floaters need strict slack between ratio 1 and gamma
    REQUIRE_THROWS_AS(generate_weakly_stable_maxcut(10, 1.0, 0.2, 1), generation_error);
  }
}

TEST_CASE("stable multiway instances clear margin 4", "[generators]") {
  const auto gen = generate_stable_multiway(10, 3, 4.0, 11);
  REQUIRE(gen.graph.n() == 10);
  REQUIRE(gen.terminals == std::vector<int>{0, 1, 2});
  REQUIRE(gen.margin.greater_than(Rational(4)));

  SECTION("pinned values for seed 11") {
    const auto brute = brute_multiway_cut(gen.graph, gen.terminals);
    REQUIRE(brute.value == Approx(6.0));
    REQUIRE(gen.margin == ExtRatio(Rational(8), Rational(1)));
    REQUIRE(brute.partition.part == gen.planted.part);
  }
  SECTION("the oracle confirms the planted partition") {
    const auto rep = multiway_stability_report(gen.graph, gen.terminals);
    REQUIRE(rep.optimal.part == gen.planted.part);
    REQUIRE(rep.unique_optimum);
    REQUIRE(rep.stable(4.0));
  }
  SECTION("identical seeds reproduce the instance") {
    const auto again = generate_stable_multiway(10, 3, 4.0, 11);
    REQUIRE(serialize_instance(instance_from_graph(gen.graph)) ==
            serialize_instance(instance_from_graph(again.graph)));
    REQUIRE(again.planted.part == gen.planted.part);
  }
  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(generate_stable_multiway(10, 1, 4.0, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_multiway(3, 3, 4.0, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_multiway(10, 3, 0.5, 1), instance_error);
    REQUIRE_THROWS_AS(generate_stable_multiway(16, 2, 4.0, 1), size_cap_error);
  }
}
