#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "stablecut/generators.hpp"
#include "stablecut/report.hpp"

using namespace stablecut;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("status vocabulary is closed and spelled exactly", "[report]") {
  CHECK(std::string(to_string(RunStatus::optimal)) == "OPTIMAL");
  CHECK(std::string(to_string(RunStatus::not_stable_certificate)) == "NOT_STABLE_CERTIFICATE");
  CHECK(std::string(to_string(RunStatus::improved)) == "IMPROVED");
  CHECK(std::string(to_string(RunStatus::certified_stop)) == "CERTIFIED_STOP");
  CHECK(std::string(to_string(RunStatus::error)) == "ERROR");
}

TEST_CASE("fnv1a64 matches the published 64-bit test vectors", "[report]") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  // Pointer/length overload agrees with the string overload, including
  // embedded NUL bytes.
  const char raw[] = {'a', '\0', 'b'};
  CHECK(fnv1a64(raw, 3) == fnv1a64(std::string(raw, 3)));
  CHECK(fnv1a64(raw, 3) != fnv1a64("a"));
}

TEST_CASE("instance digest is 16 lowercase hex chars and ignores provenance", "[report]") {
  Instance star = instance_from_graph(star_graph(5.0));
  star.terminals = star_terminals();

  const std::string d = instance_digest(star);
  REQUIRE(d.size() == 16);
  for (char c : d) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));

  // Attaching provenance must not move the digest: it hashes the mathematical
  // instance only.
  Instance tagged = star;
  tagged.provenance["generator"] = "stable-multiway";
  tagged.provenance["seed"] = 42;
  CHECK(instance_digest(tagged) == d);

  // But the actual data is load-bearing.
  Instance heavier = instance_from_graph(star_graph(6.0));
  heavier.terminals = star_terminals();
  CHECK(instance_digest(heavier) != d);
  Instance no_terms = star;
  no_terms.terminals.clear();
  CHECK(instance_digest(no_terms) != d);
}

TEST_CASE("digests of the standard fixtures are pinned", "[report]") {
  Instance star = instance_from_graph(star_graph(5.0));
  star.terminals = star_terminals();
  CHECK(instance_digest(star) == "d8d5c8601d6ca5ad");

  Instance tri = instance_from_graph(
      WeightedGraph(3, {Edge{0, 1, 4.0}, Edge{0, 2, 2.0}, Edge{1, 2, 1.0}}));
  CHECK(instance_digest(tri) == "3e9293d680fd3a71");
}

TEST_CASE("run report envelope: exit code, key layout, conditional blocks", "[report]") {
  RunReport rep;
  rep.command = "maxcut";
  rep.status = RunStatus::optimal;
  rep.digest = "3e9293d680fd3a71";
  rep.n = 3;
  rep.m = 3;
  rep.options["mode"] = "robust";
  rep.options["seed"] = 7;
  rep.result["value"] = 6.0;
  rep.result["cut"]["members"] = std::vector<int>{0};
  rep.wall_time_ms = 12.5;

  CHECK(rep.exit_code() == 0);

  const auto j = rep.to_json();
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"command", "status", "instance", "options", "result",
                                         "wall_time_ms"});
  CHECK(j["status"] == "OPTIMAL");
  CHECK(j["instance"]["digest"] == "3e9293d680fd3a71");
  CHECK(j["instance"]["n"] == 3);
  CHECK(j["instance"]["m"] == 3);
  CHECK(j["options"]["seed"] == 7);
  CHECK(j["result"]["cut"]["members"] == std::vector<int>{0});

  RunReport err;
  err.command = "certify";
  err.status = RunStatus::error;
  err.message = "no such file";
  CHECK(err.exit_code() == 1);
  const auto je = err.to_json();
  CHECK(!je.contains("instance"));  // empty digest omits the whole block
  CHECK(!je.contains("options"));
  CHECK(!je.contains("result"));
  CHECK(je["message"] == "no such file");
  CHECK(je["status"] == "ERROR");
}

TEST_CASE("render_text flattens nested result keys with dotted paths", "[report]") {
  RunReport rep;
  rep.command = "certify";
  rep.status = RunStatus::not_stable_certificate;
  rep.digest = "3e9293d680fd3a71";
  rep.n = 3;
  rep.m = 3;
  rep.result["margin"]["num"] = 2.0;
  rep.result["margin"]["den"] = 1.0;
  rep.result["stable"] = false;
  rep.wall_time_ms = 1.5;

  const std::string text = rep.render_text();
  CHECK_THAT(text, ContainsSubstring("certify: NOT_STABLE_CERTIFICATE"));
  CHECK_THAT(text, ContainsSubstring("instance 3e9293d680fd3a71  (n = 3, m = 3)"));
  CHECK_THAT(text, ContainsSubstring("margin.num = 2.0"));
  CHECK_THAT(text, ContainsSubstring("margin.den = 1.0"));
  CHECK_THAT(text, ContainsSubstring("stable = false"));
  CHECK_THAT(text, ContainsSubstring("wall_time_ms = 1.5"));
}

TEST_CASE("wall clock is monotone and reports milliseconds", "[report]") {
  WallClock clock;
  const double t0 = clock.elapsed_ms();
  REQUIRE(t0 >= 0.0);
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  const double t1 = clock.elapsed_ms();
  CHECK(t1 >= t0);
  CHECK(t1 >= 4.0);  // sleep granted at least most of the requested 5ms
}
