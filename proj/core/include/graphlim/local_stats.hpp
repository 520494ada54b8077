#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "graphlim/canonical.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

// Truncated local-statistics vector L(G).
//
// per_radius[s] counts, for every observed class, how many vertices x have
// ball(g, x, s) in that class. A class alpha can appear at a radius s larger
// than rad(alpha) when the ball saturates a small component; p(alpha) only
// reads the count at s == rad(alpha).
struct StatVector {
  int r_max = 0;
  int vertex_count = 0;
  int degree_bound = 1;
  std::vector<std::map<CanonicalBallKey, std::int64_t>> per_radius;

  // |T_rad(alpha)(G, alpha)| / |V(G)|, zero for unobserved classes.
  Rational p(const CanonicalBallKey& alpha) const;
  std::int64_t count_at(int radius, const CanonicalBallKey& alpha) const;

  // Every observed class with rad <= r_max and its frequency, in the
  // canonical enumeration order (radius, size, key bytes).
  std::vector<std::pair<CanonicalBallKey, Rational>> classes() const;

  friend bool operator==(const StatVector&, const StatVector&) = default;
};

StatVector class_census(const Graph& g, int r, int canonical_limit = kDefaultCanonicalLimit);

// canonical_key(ball(g, x, r)) for every vertex x.
std::vector<CanonicalBallKey> vertex_ball_keys(const Graph& g, int r,
                                               int canonical_limit = kDefaultCanonicalLimit);

struct DPiValue {
  double value = 0.0;
  // Weight left on classes beyond the enumerated prefix: 2^-K for K
  // enumerated classes.
  double truncation_bound = 0.0;
  std::size_t classes_compared = 0;
};

// Product-topology distance over the union of classes observed in either
// vector, enumerated in canonical order with weights 2^-k, k = 1, 2, ...
DPiValue d_pi(const StatVector& a, const StatVector& b);

struct LimitFrequency {
  CanonicalBallKey key;
  double last = 0.0;    // frequency in the final member
  double spread = 0.0;  // max - min over the tail half
  bool stable = false;
};

struct WeakCauchyProfile {
  int r_max = 0;
  std::vector<int> sizes;
  std::vector<double> consecutive;  // d_pi(L(G_i), L(G_{i+1}))
  // tail_sup[m] = max over sampled pairs m <= i < j of d_pi(L(G_i), L(G_j))
  std::vector<double> tail_sup;
  std::vector<LimitFrequency> limit_frequencies;
  std::vector<StatVector> stats;
};

// All pairs are sampled for sequences of at most 32 members; longer
// sequences use consecutive pairs plus pairs with the final member.
WeakCauchyProfile weak_cauchy_profile(std::span<const Graph> seq, int r_max,
                                      double stable_tolerance = 1e-2,
                                      int canonical_limit = kDefaultCanonicalLimit);

}  // namespace graphlim
