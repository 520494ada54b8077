#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/partition.hpp"

namespace graphlim {

// How two labeled stars are compared. `induced` compares the labeled
// induced 1-balls, including edges between neighbors; `incident` compares
// only the labeled neighbor sets.
enum class StarComparison { induced, incident };

std::string to_string(StarComparison mode);
StarComparison parse_star_comparison(const std::string& text);

// Labeled 1-ball around v, serialized as the sorted closed neighborhood
// followed by the sorted edge pairs inside it (only the edges at v in
// incident mode).
struct StarFingerprint {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  friend bool operator==(const StarFingerprint&, const StarFingerprint&) = default;
};

StarFingerprint star_fingerprint(const Graph& g, Vertex v, StarComparison mode = StarComparison::induced);

// Fraction of vertices whose labeled stars differ. Against a graph with no
// vertices the distance is 1 (0 if both are empty).
double delta(const Graph& g, const Graph& h, StarComparison mode = StarComparison::induced);

enum class EstimateKind { exact, upper_bound, lower_bound };
std::string to_string(EstimateKind kind);

struct MultipleTrial {
  int q = 1;
  int p = 1;
  int vertex_count = 0;
  double value = 1.0;
  EstimateKind kind = EstimateKind::upper_bound;
};

struct DistanceEstimate {
  double value = 1.0;
  EstimateKind kind = EstimateKind::upper_bound;
  // sigma with value == delta(G, relabel(H, sigma)), on the compared graphs
  std::optional<VertexLabeling> permutation;
  // multiples (q, p): the compared graphs were qG and pH
  std::optional<int> q;
  std::optional<int> p;
  std::vector<MultipleTrial> trials;
};

inline constexpr int kDefaultExactLimit = 10;

struct DeltaSOptions {
  StarComparison comparison = StarComparison::induced;
  int exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 1;
  int restarts = 0;  // 0: chosen from the graph size
};

// Exact minimum over all relabelings of h by branch and bound. Throws
// LimitExceeded above options.exact_limit vertices.
DistanceEstimate delta_s_exact(const Graph& g, const Graph& h, const DeltaSOptions& options = {});

// Greedy star-class matching refined by transposition local search.
DistanceEstimate delta_s_heuristic(const Graph& g, const Graph& h, const DeltaSOptions& options = {});

enum class SearchMode { exact, heuristic };
DistanceEstimate delta_s(const Graph& g, const Graph& h, SearchMode mode, const DeltaSOptions& options = {});

struct DeltaRhoOptions {
  DeltaSOptions delta_s;
  int multiple_cap = 3;
  // multiples whose vertex count exceeds this are skipped
  int max_vertices = 200000;
};

// Upper bound from the multiples k*(q0, p0), k = 1..multiple_cap, of the
// minimal pair equalizing vertex counts. Each pair is searched exactly when
// small enough; the result is always an upper bound.
DistanceEstimate delta_rho(const Graph& g, const Graph& h, const DeltaRhoOptions& options = {});

struct PartitionBound {
  double value = 1.0;
  double beta = 0.0;  // max |gamma_a(g) - gamma_a(h)|
  int class_count = 0;
  int size_bound = 0;
  int degree_bound = 0;
  double eps = 0.0;
};

// 4 d eps + 2 M K beta, clamped to [0, 1].
PartitionBound delta_rho_partition_bound(const Partition& pg, const Partition& ph, double eps);
double delta_rho_upper_from_partitions(const Partition& pg, const Partition& ph, double eps);

struct StrongPair {
  int i = 0;
  int j = 0;
  double direct = 1.0;
  std::optional<double> partition;
  double best = 1.0;
};

struct StrongCauchyProfile {
  std::vector<int> sizes;
  std::vector<StrongPair> pairs;
  std::vector<double> tail_sup;  // tail_sup[m]: max best over sampled pairs m <= i < j
};

// When `partitions` is given it must hold one partition per graph, all cut
// with at most `eps` edge fraction.
StrongCauchyProfile strong_cauchy_profile(std::span<const Graph> seq, const DeltaRhoOptions& options = {},
                                          std::span<const Partition> partitions = {}, double eps = 0.0);

}  // namespace graphlim
