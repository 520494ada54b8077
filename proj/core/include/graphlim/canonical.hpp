#pragma once

#include <compare>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

// Canonical form of a rooted isomorphism class (or, with radius == -1, of an
// unrooted isomorphism class).
//
// `bytes` holds a 2-byte big-endian vertex count followed by the upper
// triangle of the adjacency matrix in canonical vertex order, packed
// row-major, most significant bit first. The root, when present, is always
// canonical vertex 0. Keys order by (radius, size, bytes).
struct CanonicalBallKey {
  int radius = 0;
  int size = 0;
  std::string bytes;

  bool rooted() const { return radius >= 0; }

  // radius byte (ff for unrooted) followed by `bytes`, lowercase hex.
  std::string hex() const;
  static CanonicalBallKey from_hex(const std::string& hex);

  // The canonical representative: vertices in canonical order, root at 0.
  Graph representative(int degree_bound) const;

  friend auto operator<=>(const CanonicalBallKey&, const CanonicalBallKey&) = default;
  friend bool operator==(const CanonicalBallKey&, const CanonicalBallKey&) = default;
};

struct CanonicalForm {
  CanonicalBallKey key;
  // order[pos] is the input vertex placed at canonical position pos.
  std::vector<Vertex> order;
};

inline constexpr int kDefaultCanonicalLimit = 64;

// Rooted canonical form. The graph must be connected (every vertex reachable
// from the root); throws LimitExceeded above `max_vertices`.
CanonicalForm canonical_form(const Graph& g, Vertex root, int max_vertices = kDefaultCanonicalLimit);
CanonicalBallKey canonical_key(const RootedGraph& b, int max_vertices = kDefaultCanonicalLimit);

// Canonical form ignoring any root; used to classify partition components.
CanonicalForm canonical_form_unrooted(const Graph& g, int max_vertices);

// Orbits of the root-fixing automorphism group: orbit[v] is the smallest
// vertex in v's orbit. Exact (one canonical form per vertex).
std::vector<Vertex> root_fixing_orbits(const Graph& g, Vertex root,
                                       int max_vertices = kDefaultCanonicalLimit);

namespace detail {

// Neighbor-list view used by the hot paths (census, kernel assembly) to skip
// building a Graph per ball.
struct LocalGraph {
  int n = 0;
  std::vector<std::vector<int>> nbr;
};

// Rooted canonical form of a connected local graph with root at local 0.
CanonicalForm canonical_form_local(const LocalGraph& g, int max_vertices);

}  // namespace detail

}  // namespace graphlim
