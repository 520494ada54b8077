#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/random.hpp"

// Brute-force reference implementations. Everything here works directly
// from edge lists and adjacency bitmasks, without the library's algorithms,
// so agreement with the library is meaningful.
namespace oracle {

using graphlim::Graph;
using graphlim::Rng;

// rows[v] has bit u set when {u, v} is an edge; n <= 32
std::vector<std::uint32_t> adjacency_rows(const Graph& g);

bool rooted_isomorphic(const Graph& a, int root_a, const Graph& b, int root_b);
bool isomorphic(const Graph& a, const Graph& b);

// Lexicographically smallest upper-triangle bit string over all labelings
// that put the root first. Two rooted graphs are isomorphic exactly when
// these strings agree. Practical up to 9 vertices.
std::string min_rooted_string(const Graph& g, int root);

// Fraction of vertices whose closed neighborhood or induced star edges
// differ between the two labeled graphs.
double star_distance(const Graph& g, const Graph& h);
double star_distance_incident(const Graph& g, const Graph& h);

// h with vertex v renamed perm[v], built from its edge list
Graph apply_permutation(const Graph& h, const std::vector<int>& perm);

// Minimum of star_distance over all |V|! relabelings of h.
double min_star_distance(const Graph& g, const Graph& h);

// Subset enumeration, n <= 24.
std::uint64_t independent_set_count(const Graph& g);

// F_1 = F_2 = 1
std::uint64_t fibonacci(int k);

// Random graph with at most `edges_wanted` edges and maximum degree <= d,
// with degree bound d.
Graph random_bounded_graph(Rng& rng, int n, int d, int edges_wanted);
// Connected variant: a random degree-capped spanning tree plus extra edges.
Graph random_connected_graph(Rng& rng, int n, int d, int extra_edges);
Graph random_relabel(Rng& rng, const Graph& g, std::vector<int>* perm_out = nullptr);

// Closed-form spectra
std::vector<double> path_graph_laplacian_spectrum(int n);  // D - A of P_n
std::vector<double> cycle_graph_laplacian_spectrum(int n);  // D - A of C_n
std::vector<double> path_adjacency_spectrum(int n);

}  // namespace oracle
