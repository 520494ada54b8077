#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

Graph gen_path(int n);   // n >= 1, d = 2
Graph gen_cycle(int n);  // n >= 3, d = 2
// dim 1: the cycle C_b; dim 2: b x b torus grid, row-major labels, d = 4
Graph gen_torus(int b, int dim);
// dim 1: the path P_b; dim 2: b x b grid with free boundary, d = 4
Graph gen_box(int b, int dim);
// complete binary tree of the given depth in heap order, d = 3
Graph gen_tree_ball(int depth);

struct RandomRegularResult {
  Graph graph;
  int attempts = 0;          // pairings drawn in total
  int reseeds = 0;           // times the attempt cap forced a new derived seed
  std::uint64_t seed_used = 0;
};

// Pairing model with rejection of loops and multi-edges.
RandomRegularResult gen_random_regular_traced(int n, int d, std::uint64_t seed, int attempt_cap = 10000);
Graph gen_random_regular(int n, int d, std::uint64_t seed);

struct GeneratorSpec {
  std::string family;  // path, cycle, torus, box, tree-ball, random-regular
  std::map<std::string, std::int64_t> params;
  std::uint64_t seed = 1;

  Graph generate() const;
  std::string describe() const;
};

struct ManifestMember {
  std::optional<GeneratorSpec> generator;
  std::optional<std::string> path;  // edge-list file, relative to the manifest
};

struct SequenceManifest {
  int degree_bound = 1;
  std::vector<ManifestMember> members;
  std::string hyperfinite_expected = "unknown";  // yes | no | unknown
  std::string description;
  bool allow_unordered = false;  // skip the strictly-increasing size check

  // Loads every member (in parallel) and checks the shared degree bound and
  // size ordering. Members with a smaller degree bound are lifted to d.
  std::vector<Graph> load() const;
};

// {"d", "members": [{"family", "params", "seed"} | {"path"}], "tags": {...},
//  "allow_unordered"}; unknown keys are rejected.
SequenceManifest parse_manifest(const std::string& text, const std::string& base_dir = ".");
SequenceManifest read_manifest(const std::string& path);

}  // namespace graphlim
