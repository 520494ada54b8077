#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/normed.hpp"
#include "graphlim/spectral.hpp"

namespace graphlim {

enum class FunctionalKind { almost_additive, subadditive, unknown };
std::string to_string(FunctionalKind kind);

// A graph functional with its declared constants. `evaluate` must be a pure
// function of the graph; it is called concurrently.
struct GraphFunctional {
  std::string name;
  FunctionalKind kind = FunctionalKind::unknown;
  std::function<NormedValue(const Graph&)> evaluate;
  std::optional<double> almost_additive_constant;  // D
  std::optional<double> bound_constant;            // C
};

// vcount, ecount, log-indep-sets, eig-count:<kernel>. Constants that depend
// on the degree bound are filled in for `degree_bound`.
GraphFunctional builtin_functional(const std::string& name, int degree_bound);

// Wraps G -> n_H(.) (unnormalized eigenvalue counting function, sup norm).
// Declared constant D = 4(d+1).
GraphFunctional eig_counting_functional(const KernelSpec& k, int degree_bound,
                                        const SpectralOptions& options = {});

struct AlmostAdditiveCheck {
  std::size_t pair = 0;
  int p = 1;  // multiple of the first graph
  int q = 1;  // multiple of the second graph
  int vertex_count = 0;  // p |V(G)|
  double lhs = 0.0;      // ||p F(G) - q F(H)||
  double delta = 0.0;    // star distance estimate of pG and qH
  EstimateKind delta_kind = EstimateKind::upper_bound;
  double rhs = 0.0;      // D * delta * p |V(G)|
  bool pass = true;
};

struct AlmostAdditiveReport {
  double constant = 0.0;
  std::vector<AlmostAdditiveCheck> checks;
  std::size_t violations = 0;
  // smallest D for which every check passes (infinite when some lhs > 0
  // meets delta == 0)
  double empirical_constant = 0.0;
};

struct AlmostAdditiveOptions {
  std::optional<double> constant;  // defaults to the functional's D
  int multiple_cap = 1;           // multiples k*(p, q), k = 1..cap
  DeltaSOptions delta_s;
  double tolerance = 1e-9;
};

AlmostAdditiveReport verify_almost_additive(const GraphFunctional& f,
                                            std::span<const std::pair<Graph, Graph>> pairs,
                                            const AlmostAdditiveOptions& options = {});

struct NormalizedLimitReport {
  std::vector<int> sizes;
  std::vector<NormedValue> normalized;  // F(G_i)/|V(G_i)|
  NormedValue estimate;                 // last normalized value
  // profile[m] = max over sampled pairs m <= i < j of the norm distance
  std::vector<double> profile;
  double tolerance = 1e-3;
  std::optional<std::size_t> converged_from;
};

NormalizedLimitReport normalized_limit(const GraphFunctional& f, std::span<const Graph> seq,
                                       double tolerance = 1e-3);

struct AxiomViolation {
  std::size_t sample = 0;
  std::string detail;
};

struct AxiomResult {
  std::string axiom;
  std::size_t checks = 0;
  std::vector<AxiomViolation> violations;
  bool skipped = false;
  bool passed() const { return violations.empty(); }
};

struct SubadditiveOptions {
  std::uint64_t seed = 1;
  int trials = 4;       // random subgraphs / bipartitions / relabelings per sample
  bool strict = false;  // also test non-induced subgraphs
  std::optional<double> bound_constant;  // defaults to the functional's C
  double tolerance = 1e-9;
};

struct SubadditiveReport {
  std::vector<AxiomResult> axioms;  // boundedness, monotonicity, subadditivity, special-additivity, pattern-invariance
  bool strict = false;
  bool passed() const;
};

SubadditiveReport check_subadditive_axioms(const GraphFunctional& h, std::span<const Graph> samples,
                                           const SubadditiveOptions& options = {});

struct SubadditiveLimitReport {
  std::vector<int> sizes;
  std::vector<double> normalized;
  double lambda = 0.0;  // tail liminf, or -infinity
  double tail_inf = 0.0;
  double tail_sup = 0.0;
  double gap = 0.0;
  bool minus_infinity = false;
};

// Tail = second half of the sequence. lambda is -infinity when the last
// normalized value is below `floor` and the tail keeps decreasing.
SubadditiveLimitReport subadditive_limit(const GraphFunctional& h, std::span<const Graph> seq,
                                         double floor = -1e6);

struct FeketeViolation {
  int m = 0;
  int n = 0;
  double sum = 0.0;   // a_{m+n}
  double bound = 0.0;  // a_m + a_n
};

struct FeketeReport {
  double infimum = 0.0;  // min a_n / n
  int infimum_at = 1;
  double last_ratio = 0.0;
  // (a_N - a_{N/2}) / (N - N/2): the asymptotic slope read off the tail
  double tail_slope = 0.0;
  std::size_t violation_count = 0;
  std::vector<FeketeViolation> violations;  // first few, by (m, n)
  bool subadditive() const { return violation_count == 0; }
};

// a[0] is a_1. Checks a_{m+n} <= a_m + a_n for all m <= n with m+n <= N.
FeketeReport fekete_limit(std::span<const double> a, std::size_t max_witnesses = 16);

}  // namespace graphlim
