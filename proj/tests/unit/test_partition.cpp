#include <doctest.h>

#include <cmath>

#include "graphlim/errors.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/sequence.hpp"
#include "oracle.hpp"

using namespace graphlim;

TEST_CASE("path partition cuts every K-th edge") {
  for (double eps : {0.5, 0.25, 0.1}) {
    for (int n : {7, 50, 333}) {
      const Graph g = gen_path(n);
      const Partition p = partition_path_like(g, eps);
      validate_partition(g, p);
      const int k = static_cast<int>(std::ceil(2.0 / eps));
      CHECK(p.size_bound == k);
      CHECK(p.max_component_size() <= k);
      CHECK(p.cut_fraction() <= Rational(static_cast<std::int64_t>(std::lround(eps * 100)), 100));
      CHECK(p.cut_edges.size() == static_cast<std::size_t>((n - 1) / k));
    }
  }
  const Partition cyc = partition_path_like(gen_cycle(40), 0.25);
  validate_partition(gen_cycle(40), cyc);
  CHECK(cyc.max_component_size() <= 8);
  CHECK_THROWS_AS(partition_path_like(gen_torus(3, 2), 0.1), InvalidInput);
}

TEST_CASE("class frequencies of a path partition") {
  const Partition p = partition_path_like(gen_path(100), 0.1);
  const auto p20 = canonical_form_unrooted(gen_path(20), 64).key;
  CHECK(p.c(p20) == Rational(1));
  CHECK(p.gamma(p20) == Rational(5, 100));
  CHECK(p.class_components.at(p20) == 5);
  CHECK(exceptional_vertices(p).size() == 8);
}

TEST_CASE("torus partition into aligned boxes") {
  const Graph g = gen_torus(20, 2);
  REQUIRE(recognize_torus(g) == 20);
  const Partition p = partition_torus(g, 0.4);
  validate_partition(g, p);
  CHECK(p.cut_fraction().to_double() <= 0.4);
  CHECK(p.max_component_size() <= 100);
  CHECK_FALSE(recognize_torus(gen_box(5, 2)).has_value());
}

TEST_CASE("tree partition on complete binary trees") {
  const Graph g = gen_tree_ball(8);
  REQUIRE(is_forest(g));
  for (double eps : {0.5, 0.2}) {
    const Partition p = partition_tree(g, eps);
    validate_partition(g, p);
    const int s = static_cast<int>(std::ceil(2.0 / eps));
    CHECK(p.max_component_size() <= 1 + 3 * (s - 1));
    CHECK(p.cut_fraction().to_double() <= eps);
  }
}

TEST_CASE("ball carving produces valid partitions within the size cap") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_bounded_graph(rng, 120, 3, 150);
    CarveOptions o;
    o.eps = 0.2;
    o.seed = trial;
    o.max_component = 15;
    const Partition p = partition_ball_carving(g, o);
    validate_partition(g, p);
    CHECK(p.max_component_size() <= 15);
  }
}

TEST_CASE("auto strategy recognizes families") {
  CHECK(partition_auto(gen_path(30), 0.2, 1).strategy == "path");
  CHECK(partition_auto(gen_torus(8, 2), 0.5, 1).strategy == "torus");
  CHECK(partition_auto(gen_tree_ball(4), 0.5, 1).strategy == "tree");
  CHECK(partition_auto(gen_random_regular(20, 3, 1), 0.5, 1).strategy == "carve");
}

TEST_CASE("validation catches corrupted partitions") {
  const Graph g = gen_path(20);
  Partition p = partition_path_like(g, 0.5);
  Partition bad = p;
  bad.components.pop_back();
  CHECK_THROWS_AS(validate_partition(g, bad), InvariantViolation);
  bad = p;
  bad.cut_edges.push_back({0, 1});
  CHECK_THROWS_AS(validate_partition(g, bad), InvariantViolation);
  bad = p;
  bad.size_bound = 1;
  CHECK_THROWS_AS(validate_partition(g, bad), InvariantViolation);
}

TEST_CASE("equipartition comparison") {
  const Partition a = partition_path_like(gen_path(100), 0.1);
  const Partition b = partition_path_like(gen_path(200), 0.1);
  CHECK(equipartition_compare(a, b) == 0.0);
  const Partition c = partition_path_like(gen_path(110), 0.1);
  CHECK(equipartition_compare(a, c) > 0.0);
}
