#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

// Finite simple graph on vertices 0..n-1 with a global degree bound.
//
// Immutable after construction. Neighbor lists are sorted ascending and the
// degree bound is validated when the graph is built; every construction
// path goes through the same validation so a Graph value always satisfies
// its invariants.
class Graph {
 public:
  Graph() = default;

  // Throws InvalidInput on loops, duplicate edges, out-of-range endpoints,
  // a degree above `degree_bound`, or degree_bound < 1.
  Graph(int n, std::span<const Edge> edges, int degree_bound);

  static Graph edgeless(int n, int degree_bound);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return edge_count_; }
  int degree_bound() const { return degree_bound_; }
  bool empty() const { return adj_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[check(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[check(v)].size()); }
  int max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  // Edges as (u,v) with u<v, sorted lexicographically.
  std::vector<Edge> edges() const;

  // Same vertices and edges, different stored bound. The new bound must be
  // at least the maximum degree.
  Graph with_degree_bound(int degree_bound) const;

  Vertex check(Vertex v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::int64_t edge_count_ = 0;
  int degree_bound_ = 1;
};

// A permutation of 0..n-1; image(v) is the new label of vertex v.
class VertexLabeling {
 public:
  VertexLabeling() = default;
  explicit VertexLabeling(std::vector<Vertex> image);

  static VertexLabeling identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
  const std::vector<Vertex>& image() const { return image_; }
  VertexLabeling inverse() const;
  // (a.then(b))(v) == b(a(v))
  VertexLabeling then(const VertexLabeling& b) const;

  friend bool operator==(const VertexLabeling&, const VertexLabeling&) = default;

 private:
  std::vector<Vertex> image_;
};

// Relabeled copy G^sigma: edge {u,v} becomes {sigma(u), sigma(v)}.
Graph relabel(const Graph& g, const VertexLabeling& sigma);

// An induced subgraph with its root and the map back to the parent graph.
struct RootedGraph {
  Graph graph;
  Vertex root = 0;
  // local vertex i corresponds to parent vertex origin[i]
  std::vector<Vertex> origin;
};

// Shortest-path length or kInfiniteDistance when x and y are disconnected.
int path_distance(const Graph& g, Vertex x, Vertex y);

// BFS distances from x; unreachable vertices get kInfiniteDistance.
std::vector<int> distances_from(const Graph& g, Vertex x);

// Induced subgraph on {y : d(x,y) <= r}. Local labels follow BFS discovery
// order with neighbors visited in ascending order, so the root is local 0.
RootedGraph ball(const Graph& g, Vertex x, int r);

// The graph on t induced by g; local vertex i is the i-th element of t in
// the order given. Duplicates in t are rejected.
RootedGraph induced_subgraph(const Graph& g, std::span<const Vertex> t);

// q disjoint copies; copy i occupies labels [i*n, (i+1)*n).
Graph disjoint_multiple(const Graph& g, int q);

// g on labels [0, n_g), h shifted to [n_g, n_g+n_h). Degree bounds must match.
Graph disjoint_union(const Graph& g, const Graph& h);

// Maximal connected vertex sets, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// g with the listed edges deleted (each must exist).
Graph remove_edges(const Graph& g, std::span<const Edge> cut);

// Eccentricity of v within its component.
int eccentricity(const Graph& g, Vertex v);

}  // namespace graphlim
