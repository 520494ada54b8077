#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "graphlim/edge_list.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/sequence.hpp"
#include "oracle.hpp"

using namespace graphlim;

TEST_CASE("deterministic families") {
  CHECK(gen_path(2).edge_count() == 1);
  CHECK(gen_path(1).edge_count() == 0);
  CHECK(gen_cycle(3).edge_count() == 3);
  for (int n : {5, 17}) CHECK(gen_path(n).edge_count() == n - 1);
  const Graph t = gen_torus(3, 2);
  CHECK(t.vertex_count() == 9);
  CHECK(t.edge_count() == 18);
  for (int v = 0; v < 9; ++v) CHECK(t.degree(v) == 4);
  CHECK(gen_torus(7, 1) == gen_cycle(7));
  CHECK(gen_box(6, 1) == gen_path(6));
  CHECK(gen_box(6, 2).edge_count() == 2 * 6 * 5);
  CHECK(gen_tree_ball(0).vertex_count() == 1);
  CHECK(gen_tree_ball(2).vertex_count() == 7);
  CHECK(gen_tree_ball(9).vertex_count() == (1 << 10) - 1);
  CHECK_THROWS_AS(gen_path(0), InvalidInput);
  CHECK_THROWS_AS(gen_cycle(2), InvalidInput);
  CHECK_THROWS_AS(gen_torus(2, 2), InvalidInput);
  CHECK_THROWS_AS(gen_torus(4, 3), InvalidInput);
}

TEST_CASE("box interior frequency") {
  for (int b : {4, 7, 12}) {
    const auto s = class_census(gen_box(b, 2), 1);
    const auto interior = canonical_key(ball(gen_torus(5, 2), 0, 1));
    CHECK(s.p(interior) == Rational((b - 2) * (b - 2), b * b));
  }
  const auto s = class_census(gen_torus(9, 2), 1);
  CHECK(s.per_radius[1].size() == 1);
}

TEST_CASE("random regular graphs") {
  const Graph k4 = gen_random_regular(4, 3, 99);
  CHECK(k4.edge_count() == 6);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_regular(60, 3, seed);
    for (int v = 0; v < 60; ++v) CHECK(g.degree(v) == 3);
    CHECK(to_edge_list(g) == to_edge_list(gen_random_regular(60, 3, seed)));
  }
  CHECK(gen_random_regular(60, 3, 1) != gen_random_regular(60, 3, 2));
  const auto big = class_census(gen_random_regular(1000, 3, 1), 1);
  const Graph star(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}, 3);
  CHECK(big.p(canonical_key(ball(star, 0, 1))) >= Rational(98, 100));
  CHECK_THROWS_AS(gen_random_regular(5, 3, 1), InvalidInput);
  CHECK_THROWS_AS(gen_random_regular(3, 3, 1), InvalidInput);
  const auto traced = gen_random_regular_traced(200, 4, 3);
  CHECK(traced.attempts >= 1);
}

TEST_CASE("manifests") {
  const auto dir = std::filesystem::temp_directory_path() / "graphlim_manifest_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "c12.edges");
    f << to_edge_list(gen_cycle(12));
  }
  const std::string text = R"({"d": 3, "members": [
      {"family": "path", "params": {"n": 5}},
      {"path": "c12.edges"},
      {"family": "random-regular", "params": {"n": 20, "d": 3}, "seed": 4}],
    "tags": {"hyperfinite-expected": "unknown", "description": "mixed"}})";
  const SequenceManifest m = parse_manifest(text, dir.string());
  CHECK(m.degree_bound == 3);
  CHECK(m.hyperfinite_expected == "unknown");
  const auto graphs = m.load();
  REQUIRE(graphs.size() == 3);
  for (const auto& g : graphs) CHECK(g.degree_bound() == 3);
  CHECK(graphs[1].vertex_count() == 12);
  CHECK(graphs[2] == gen_random_regular(20, 3, 4));

  CHECK_THROWS_AS(parse_manifest(R"({"members": []})"), InvalidInput);
  CHECK_THROWS_AS(parse_manifest(R"({"d": 2, "members": [], "colour": 1})"), InvalidInput);
  CHECK_THROWS_AS(parse_manifest(R"({"d": 2, "members": [], "tags": {"hyperfinite-expected": "maybe"}})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_manifest(R"({"d": 2, "members": [{"family": "path", "params": {"m": 3}}]})").load(),
                  InvalidInput);
  const auto shrinking = parse_manifest(R"({"d": 2, "members": [
      {"family": "path", "params": {"n": 9}}, {"family": "path", "params": {"n": 4}}]})");
  CHECK_THROWS_AS(shrinking.load(), InvalidInput);
  const auto unordered = parse_manifest(R"({"d": 2, "allow_unordered": true, "members": [
      {"family": "path", "params": {"n": 9}}, {"family": "path", "params": {"n": 4}}]})");
  CHECK(unordered.load().size() == 2);
  CHECK_THROWS_AS(parse_manifest(R"({"d": 2, "members": [{"family": "torus", "params": {"b": 3}}]})").load(),
                  InvalidInput);
  std::filesystem::remove_all(dir);
}
