#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphlim/canonical.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

// An edge-removal partition of a source graph into small components.
//
// Components are classified by unrooted canonical form. class_vertices[a]
// is |C_a| (vertices lying in components of class a) and
// class_components[a] is the number of such components; c_a = |C_a|/|V|
// and gamma_a = components/|V|.
struct Partition {
  int vertex_count = 0;
  std::int64_t edge_count = 0;
  int degree_bound = 1;
  std::string strategy;
  int size_bound = 0;  // K
  std::vector<Edge> cut_edges;  // (u<v), sorted
  std::vector<std::vector<Vertex>> components;
  std::map<CanonicalBallKey, std::int64_t> class_vertices;
  std::map<CanonicalBallKey, std::int64_t> class_components;

  // |cut_edges| / |E|, exact; zero for edgeless graphs.
  Rational cut_fraction() const;
  Rational c(const CanonicalBallKey& alpha) const;
  Rational gamma(const CanonicalBallKey& alpha) const;
  int max_component_size() const;
};

inline constexpr int kComponentCanonicalLimit = 4096;

// Builds the partition obtained by deleting `cut` from g and classifies the
// remaining components.
Partition make_partition(const Graph& g, std::vector<Edge> cut, int size_bound, std::string strategy,
                         int canonical_limit = kComponentCanonicalLimit);

// Re-derives the components from (g minus cut_edges) and checks every
// Partition invariant; throws InvariantViolation on the first failure.
void validate_partition(const Graph& g, const Partition& p);

bool is_path_like(const Graph& g);  // every component is a path or a cycle
bool is_forest(const Graph& g);
// Side length b when g is exactly the b x b torus grid in row-major labels.
std::optional<int> recognize_torus(const Graph& g);

// Cuts every K-th edge along each path or cycle, K = ceil(2/eps).
Partition partition_path_like(const Graph& g, double eps);

// Aligned s x s boxes on a recognized torus grid, s = ceil(4/eps).
Partition partition_torus(const Graph& g, double eps);

// Leaf-stripping on a forest: a subtree is detached once it holds
// s = ceil(2/eps) vertices, so components have at most 1 + d(s-1) vertices.
Partition partition_tree(const Graph& g, double eps);

struct CarveOptions {
  double eps = 0.1;
  std::uint64_t seed = 1;
  int max_component = 0;  // 0: no size target
  int canonical_limit = kComponentCanonicalLimit;
};

// Greedy BFS-ball carving in seeded vertex order. A ball stops growing at
// the first radius whose boundary has at most eps * (interior edges) edges,
// or before it would exceed max_component. The reported size bound is the
// largest component actually produced.
Partition partition_ball_carving(const Graph& g, const CarveOptions& options);

// path -> torus -> tree -> carve, by recognition.
Partition partition_auto(const Graph& g, double eps, std::uint64_t seed);

// Endpoints of cut edges, sorted.
std::vector<Vertex> exceptional_vertices(const Partition& p);

// Sum over the union of component classes of |c_a(pa) - c_a(pb)|.
double equipartition_compare(const Partition& pa, const Partition& pb);

}  // namespace graphlim
