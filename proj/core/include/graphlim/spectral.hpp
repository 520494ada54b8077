#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphlim/canonical.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/normed.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/reference_curves.hpp"

namespace graphlim {

// A finite-range, pattern-invariant coefficient function. The value h(x, y)
// depends only on the rooted class of the range-R ball around x and on the
// position of y inside it.
//
// Kernels are given either as a table, keyed by canonical ball class with
// one value per canonical position, or as a rule that computes the values
// for a ball directly (used by the built-in kernels, which are defined for
// every class).
struct KernelSpec {
  std::string name;
  int range = 1;
  std::map<CanonicalBallKey, std::vector<double>> table;
  // values for ball.graph's vertices, ball.root == 0
  std::function<std::vector<double>(const Graph& ball)> rule;

  bool is_rule() const { return static_cast<bool>(rule); }

  // Values indexed by canonical positions of `key`'s representative.
  std::vector<double> values_for(const CanonicalBallKey& key) const;
  // Whether h vanishes on the class.
  bool vanishes_on(const CanonicalBallKey& key) const;
};

// "adjacency", "laplacian" (sum over neighbors of u(y) - u(x), i.e. A - D),
// "graph-laplacian" (D - A) and "zero".
KernelSpec builtin_kernel(const std::string& name);
bool is_builtin_kernel(const std::string& name);

// {"R": int, "entries": [{"ball": hex | {"n", "root", "edges"}, "values": [...]}]}
// Inline balls give values in their own vertex order. Every entry is checked
// to be constant on orbits of the root-fixing automorphism group.
KernelSpec parse_kernel_json(const std::string& text, const std::string& name = "table");
KernelSpec load_kernel(const std::string& name_or_path);

// Throws InvalidInput when a table entry has the wrong length, a radius
// above the range, or differs on two vertices of one root-fixing orbit.
void validate_kernel_table(const KernelSpec& k);

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : rows_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(rows_.size()); }
  double at(int i, int j) const;
  // row entries (column, value), sorted by column, zeros omitted
  const std::vector<std::pair<int, double>>& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  void add(int i, int j, double value);
  double trace() const;
  double max_row_abs_sum() const;
  std::vector<double> dense() const;  // row-major

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::vector<std::vector<std::pair<int, double>>> rows_;
};

inline constexpr double kSymmetryTolerance = 1e-12;

// M[x][y] = h_alpha(phi(y)) for B_R(x) ~phi alpha. Throws InvalidInput
// naming the class for a missing table entry, or naming the pair when the
// result is not symmetric.
SymMatrix assemble(const Graph& g, const KernelSpec& k);

enum class SpectrumMode { automatic, dense, inertia };

struct SpectralOptions {
  SpectrumMode mode = SpectrumMode::automatic;
  int dense_limit = 4000;
};

class InertiaCounter;

// Normalized eigenvalue counting function N(lambda) = #{E <= lambda}/n.
//
// In dense mode every eigenvalue is known and eigenvalues closer than
// kEigenvalueTolerance are merged into one jump. In inertia mode counts are
// obtained by factorizing M - lambda I at each query.
class SpectralCDF {
 public:
  static constexpr double kEigenvalueTolerance = 1e-9;

  int dimension() const { return dimension_; }
  bool is_dense() const { return !counter_; }
  double spectral_bound() const { return bound_; }

  // dense mode only
  const std::vector<double>& jump_points() const;
  const std::vector<std::int64_t>& cumulative_counts() const;
  std::vector<double> eigenvalues() const;

  std::int64_t count_at_most(double lambda) const;
  std::int64_t count_below(double lambda) const;
  double operator()(double lambda) const;
  double left_limit(double lambda) const;

  // Unnormalized counting function n(.) as a step function (dense mode).
  StepFunction counting_function() const;

 private:
  friend SpectralCDF spectral_cdf(const SymMatrix& m, const SpectralOptions& options);
  friend SpectralCDF spectral_cdf_from_eigenvalues(std::vector<double> eigenvalues, double bound);

  int dimension_ = 0;
  double bound_ = 0.0;
  std::vector<double> jumps_;
  std::vector<std::int64_t> cumulative_;
  std::shared_ptr<const InertiaCounter> counter_;
};

// Checks that every eigenvalue lies within the row-sum bound.
SpectralCDF spectral_cdf(const SymMatrix& m, const SpectralOptions& options = {});
SpectralCDF spectral_cdf_from_eigenvalues(std::vector<double> eigenvalues, double bound = 0.0);

// Query grid used when a CDF is only available pointwise: 1000 uniform
// points over [-B, B] plus all known jump points.
std::vector<double> comparison_grid(const SpectralCDF& a, const SpectralCDF* b = nullptr);

double sup_distance(const SpectralCDF& a, const SpectralCDF& b);
double sup_distance(const SpectralCDF& a, const ReferenceCurve& ref);

struct TraceCheck {
  double class_sum = 0.0;         // sum over radius-R classes of p(alpha) h_alpha(root)
  double diagonal_average = 0.0;  // trace(M)/|V|
};

// sum_alpha p(alpha) h_alpha(root) over the classes of radius-R balls,
// using stats.per_radius[R]. Needs stats.r_max >= R.
double trace_functional(const StatVector& stats, const KernelSpec& k);
// Both sides of the trace identity on g; throws InvariantViolation when they
// differ by more than 1e-12 (relative).
TraceCheck trace_identity(const Graph& g, const KernelSpec& k);

// Multiplicity of lambda divided by the dimension.
Rational atom_mass(const SpectralCDF& cdf, double lambda);

struct IdsMember {
  int vertex_count = 0;
  SpectralCDF cdf;
  std::optional<double> reference_distance;
  bool vanishes_on_member = false;  // h vanishes on every class present in the member
};

struct IdsReport {
  std::string kernel;
  std::optional<std::string> reference;
  std::vector<IdsMember> members;
  std::vector<double> consecutive;  // sup_distance between members i and i+1
  std::vector<double> tail_sup;     // max over sampled pairs i < j with i >= m
  // h vanishes on every class with positive frequency in the tail half
  bool null_sequence = false;
};

IdsReport ids_experiment(std::span<const Graph> seq, const KernelSpec& k,
                         const std::optional<ReferenceCurve>& reference = std::nullopt,
                         const SpectralOptions& options = {});

}  // namespace graphlim
