#include "graphlim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "graphlim/errors.hpp"
#include "graphlim/inertia.hpp"
#include "graphlim/parallel.hpp"

namespace graphlim {

namespace {

int representative_bound(const CanonicalBallKey& key) { return std::max(1, key.size - 1); }

std::vector<double> rule_values_on_key(const KernelSpec& k, const CanonicalBallKey& key) {
  const Graph rep = key.representative(representative_bound(key));
  return k.rule(rep);
}

}  // namespace

std::vector<double> KernelSpec::values_for(const CanonicalBallKey& key) const {
  if (is_rule()) return rule_values_on_key(*this, key);
  const auto it = table.find(key);
  if (it == table.end()) {
    throw InvalidInput("kernel '" + name + "' has no entry for ball class " + key.hex());
  }
  return it->second;
}

bool KernelSpec::vanishes_on(const CanonicalBallKey& key) const {
  const auto values = values_for(key);
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

bool is_builtin_kernel(const std::string& name) {
  return name == "adjacency" || name == "laplacian" || name == "graph-laplacian" || name == "zero";
}

KernelSpec builtin_kernel(const std::string& name) {
  KernelSpec k;
  k.name = name;
  k.range = 1;
  if (name == "adjacency") {
    k.rule = [](const Graph& b) {
      std::vector<double> v(static_cast<std::size_t>(b.vertex_count()), 0.0);
      for (Vertex y : b.neighbors(0)) v[y] = 1.0;
      return v;
    };
  } else if (name == "laplacian") {
    k.rule = [](const Graph& b) {
      std::vector<double> v(static_cast<std::size_t>(b.vertex_count()), 0.0);
      v[0] = -static_cast<double>(b.degree(0));
      for (Vertex y : b.neighbors(0)) v[y] = 1.0;
      return v;
    };
  } else if (name == "graph-laplacian") {
    k.rule = [](const Graph& b) {
      std::vector<double> v(static_cast<std::size_t>(b.vertex_count()), 0.0);
      v[0] = static_cast<double>(b.degree(0));
      for (Vertex y : b.neighbors(0)) v[y] = -1.0;
      return v;
    };
  } else if (name == "zero") {
    k.range = 0;
    k.rule = [](const Graph& b) { return std::vector<double>(static_cast<std::size_t>(b.vertex_count()), 0.0); };
  } else {
    throw InvalidInput("unknown kernel '" + name + "' (built-ins: adjacency, laplacian, graph-laplacian, zero)");
  }
  return k;
}

void validate_kernel_table(const KernelSpec& k) {
  if (k.range < 0) throw InvalidInput("kernel range must be nonnegative");
  for (const auto& [key, values] : k.table) {
    if (!key.rooted()) throw InvalidInput("kernel table keys must be rooted ball classes");
    if (key.radius > k.range) {
      throw InvalidInput("kernel entry " + key.hex() + " has radius " + std::to_string(key.radius) +
                         " above the kernel range " + std::to_string(k.range));
    }
    if (static_cast<int>(values.size()) != key.size) {
      throw InvalidInput("kernel entry " + key.hex() + " needs " + std::to_string(key.size) + " values, got " +
                         std::to_string(values.size()));
    }
    const Graph rep = key.representative(representative_bound(key));
    const auto orbit = root_fixing_orbits(rep, 0, std::max(key.size, kDefaultCanonicalLimit));
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (values[v] != values[static_cast<std::size_t>(orbit[v])]) {
        throw InvalidInput("kernel entry " + key.hex() + " is not constant on the automorphism orbit of position " +
                           std::to_string(orbit[v]) + " (position " + std::to_string(v) + " differs)");
      }
    }
  }
}

KernelSpec parse_kernel_json(const std::string& text, const std::string& name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("kernel file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("R") || !doc.contains("entries")) {
    throw InvalidInput("kernel file needs an object with \"R\" and \"entries\"");
  }
  for (const auto& [field, value] : doc.items()) {
    if (field != "R" && field != "entries" && field != "name") {
      throw InvalidInput("unknown kernel field \"" + field + "\"");
    }
  }
  KernelSpec k;
  k.name = doc.value("name", name);
  try {
    k.range = doc.at("R").get<int>();
    for (const auto& entry : doc.at("entries")) {
      auto values = entry.at("values").get<std::vector<double>>();
      const auto& ball_field = entry.at("ball");
      CanonicalBallKey key;
      if (ball_field.is_string()) {
        key = CanonicalBallKey::from_hex(ball_field.get<std::string>());
      } else {
        const int n = ball_field.at("n").get<int>();
        const int root = ball_field.value("root", 0);
        std::vector<Edge> edges;
        for (const auto& e : ball_field.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        const Graph b(n, edges, std::max(1, n - 1));
        if (static_cast<int>(values.size()) != n) {
          throw InvalidInput("inline kernel ball has " + std::to_string(n) + " vertices but " +
                             std::to_string(values.size()) + " values");
        }
        const CanonicalForm cf = canonical_form(b, root, std::max(n, kDefaultCanonicalLimit));
        std::vector<double> canonical_values(values.size());
        for (std::size_t pos = 0; pos < cf.order.size(); ++pos) canonical_values[pos] = values[cf.order[pos]];
        values = std::move(canonical_values);
        key = cf.key;
      }
      if (!k.table.emplace(key, std::move(values)).second) {
        throw InvalidInput("kernel file lists ball class " + key.hex() + " twice");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed kernel file: " + std::string(e.what()));
  }
  validate_kernel_table(k);
  return k;
}

KernelSpec load_kernel(const std::string& name_or_path) {
  if (is_builtin_kernel(name_or_path)) return builtin_kernel(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw InvalidInput("kernel '" + name_or_path + "' is neither a built-in nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_kernel_json(buffer.str(), name_or_path);
}

double SymMatrix::at(int i, int j) const {
  const auto& r = rows_.at(static_cast<std::size_t>(i));
  const auto it = std::lower_bound(r.begin(), r.end(), std::pair<int, double>(j, -HUGE_VAL));
  return it != r.end() && it->first == j ? it->second : 0.0;
}

void SymMatrix::add(int i, int j, double value) {
  if (value == 0.0) return;
  auto& r = rows_.at(static_cast<std::size_t>(i));
  if (j < 0 || j >= size()) throw InvalidInput("matrix column out of range");
  const auto it = std::lower_bound(r.begin(), r.end(), std::pair<int, double>(j, -HUGE_VAL));
  if (it != r.end() && it->first == j) {
    it->second += value;
    if (it->second == 0.0) r.erase(it);
  } else {
    r.insert(it, {j, value});
  }
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < size(); ++i) t += at(i, i);
  return t;
}

double SymMatrix::max_row_abs_sum() const {
  double best = 0.0;
  for (const auto& r : rows_) {
    double s = 0.0;
    for (const auto& [j, v] : r) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> SymMatrix::dense() const {
  const std::size_t n = rows_.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, v] : rows_[i]) out[i * n + static_cast<std::size_t>(j)] = v;
  }
  return out;
}

SymMatrix assemble(const Graph& g, const KernelSpec& k) {
  if (k.range < 0) throw InvalidInput("kernel range must be nonnegative");
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(n));
  parallel_for_chunks(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (std::size_t xi = begin; xi < end; ++xi) {
      const Vertex x = static_cast<Vertex>(xi);
      const RootedGraph b = ball(g, x, k.range);
      auto& row = rows[xi];
      if (k.is_rule()) {
        const auto values = k.rule(b.graph);
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (values[i] != 0.0) row.emplace_back(b.origin[i], values[i]);
        }
      } else {
        const int limit = std::max(kDefaultCanonicalLimit, b.graph.vertex_count());
        const CanonicalForm cf = canonical_form(b.graph, 0, limit);
        const auto it = k.table.find(cf.key);
        if (it == k.table.end()) {
          throw InvalidInput("kernel '" + k.name + "' has no entry for the ball class " + cf.key.hex() +
                             " around vertex " + std::to_string(x));
        }
        for (std::size_t pos = 0; pos < cf.order.size(); ++pos) {
          const double v = it->second[pos];
          if (v != 0.0) row.emplace_back(b.origin[cf.order[pos]], v);
        }
      }
      std::sort(row.begin(), row.end());
    }
  });
  SymMatrix m(n);
  for (int x = 0; x < n; ++x) {
    for (const auto& [y, v] : rows[x]) m.add(x, y, v);
  }
  for (int x = 0; x < n; ++x) {
    for (const auto& [y, v] : m.row(x)) {
      const double w = m.at(y, x);
      if (std::abs(v - w) > kSymmetryTolerance * std::max(1.0, std::abs(v))) {
        throw InvalidInput("kernel '" + k.name + "' is not symmetric on this graph: h(" + std::to_string(x) + "," +
                           std::to_string(y) + ") = " + std::to_string(v) + " but h(" + std::to_string(y) + "," +
                           std::to_string(x) + ") = " + std::to_string(w));
      }
    }
  }
  return m;
}

SpectralCDF spectral_cdf_from_eigenvalues(std::vector<double> eigenvalues, double bound) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  SpectralCDF cdf;
  cdf.dimension_ = static_cast<int>(eigenvalues.size());
  cdf.bound_ = bound;
  std::size_t i = 0;
  while (i < eigenvalues.size()) {
    const double start = eigenvalues[i];
    std::size_t j = i;
    while (j < eigenvalues.size() && eigenvalues[j] - start <= SpectralCDF::kEigenvalueTolerance) ++j;
    cdf.jumps_.push_back(start);
    cdf.cumulative_.push_back(static_cast<std::int64_t>(j));
    cdf.bound_ = std::max(cdf.bound_, std::abs(start));
    cdf.bound_ = std::max(cdf.bound_, std::abs(eigenvalues[j - 1]));
    i = j;
  }
  return cdf;
}

SpectralCDF spectral_cdf(const SymMatrix& m, const SpectralOptions& options) {
  const int n = m.size();
  const double bound = m.max_row_abs_sum();
  bool dense = options.mode == SpectrumMode::dense;
  if (options.mode == SpectrumMode::automatic) dense = n <= options.dense_limit;
  if (dense && options.mode == SpectrumMode::dense && n > options.dense_limit) {
    throw LimitExceeded("dense eigensolve limited to " + std::to_string(options.dense_limit) + " rows, got " +
                        std::to_string(n));
  }
  for (int x = 0; x < n; ++x) {
    for (const auto& [y, v] : m.row(x)) {
      if (std::abs(v - m.at(y, x)) > kSymmetryTolerance * std::max(1.0, std::abs(v))) {
        throw InvalidInput("matrix is not symmetric at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
  }
  if (!dense) {
    SpectralCDF cdf;
    cdf.dimension_ = n;
    cdf.bound_ = bound;
    cdf.counter_ = std::make_shared<InertiaCounter>(m);
    return cdf;
  }
  std::vector<double> eigenvalues;
  if (n > 0) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      for (const auto& [y, v] : m.row(x)) a(x, y) = v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvariantViolation("dense eigensolve did not converge");
    eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  }
  const double slack = 1e-9 * std::max(1.0, bound);
  for (double e : eigenvalues) {
    if (std::abs(e) > bound + slack) {
      throw InvariantViolation("eigenvalue " + std::to_string(e) + " exceeds the row-sum bound " +
                               std::to_string(bound));
    }
  }
  SpectralCDF cdf = spectral_cdf_from_eigenvalues(std::move(eigenvalues), 0.0);
  cdf.bound_ = bound;
  return cdf;
}

const std::vector<double>& SpectralCDF::jump_points() const {
  if (!is_dense()) throw InvalidInput("jump points are only known for a dense spectrum");
  return jumps_;
}

const std::vector<std::int64_t>& SpectralCDF::cumulative_counts() const {
  if (!is_dense()) throw InvalidInput("jump counts are only known for a dense spectrum");
  return cumulative_;
}

std::vector<double> SpectralCDF::eigenvalues() const {
  std::vector<double> out;
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < jump_points().size(); ++i) {
    for (std::int64_t c = previous; c < cumulative_[i]; ++c) out.push_back(jumps_[i]);
    previous = cumulative_[i];
  }
  return out;
}

std::int64_t SpectralCDF::count_at_most(double lambda) const {
  if (counter_) return counter_->count_below(lambda + kEigenvalueTolerance);
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), lambda + kEigenvalueTolerance);
  if (it == jumps_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

std::int64_t SpectralCDF::count_below(double lambda) const {
  if (counter_) return counter_->count_below(lambda - kEigenvalueTolerance);
  const auto it = std::lower_bound(jumps_.begin(), jumps_.end(), lambda - kEigenvalueTolerance);
  if (it == jumps_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

double SpectralCDF::operator()(double lambda) const {
  if (dimension_ == 0) return 0.0;
  return static_cast<double>(count_at_most(lambda)) / dimension_;
}

double SpectralCDF::left_limit(double lambda) const {
  if (dimension_ == 0) return 0.0;
  return static_cast<double>(count_below(lambda)) / dimension_;
}

StepFunction SpectralCDF::counting_function() const {
  std::vector<double> values;
  for (std::int64_t c : cumulative_counts()) values.push_back(static_cast<double>(c));
  return StepFunction(0.0, jumps_, std::move(values));
}

std::vector<double> comparison_grid(const SpectralCDF& a, const SpectralCDF* b) {
  double bound = a.spectral_bound();
  if (b) bound = std::max(bound, b->spectral_bound());
  bound = std::max(bound, 1e-6);
  std::vector<double> grid;
  constexpr int kPoints = 1000;
  for (int i = 0; i < kPoints; ++i) grid.push_back(-bound + 2.0 * bound * i / (kPoints - 1));
  if (a.is_dense()) grid.insert(grid.end(), a.jump_points().begin(), a.jump_points().end());
  if (b && b->is_dense()) grid.insert(grid.end(), b->jump_points().begin(), b->jump_points().end());
  std::sort(grid.begin(), grid.end());
  return grid;
}

double sup_distance(const SpectralCDF& a, const SpectralCDF& b) {
  std::vector<double> points;
  if (a.is_dense() && b.is_dense()) {
    std::merge(a.jump_points().begin(), a.jump_points().end(), b.jump_points().begin(), b.jump_points().end(),
               std::back_inserter(points));
  } else {
    points = comparison_grid(a, &b);
  }
  double best = 0.0;
  for (double t : points) best = std::max(best, std::abs(a(t) - b(t)));
  return best;
}

double sup_distance(const SpectralCDF& a, const ReferenceCurve& ref) {
  const std::vector<double> points = a.is_dense() ? a.jump_points() : comparison_grid(a);
  double best = 0.0;
  for (double t : points) {
    const double r = ref(t);
    best = std::max(best, std::abs(a(t) - r));
    best = std::max(best, std::abs(a.left_limit(t) - r));
  }
  if (points.empty()) best = 1.0;
  return best;
}

double trace_functional(const StatVector& stats, const KernelSpec& k) {
  if (stats.r_max < k.range) {
    throw InvalidInput("trace functional needs statistics up to the kernel range " + std::to_string(k.range));
  }
  double total = 0.0;
  for (const auto& [key, count] : stats.per_radius[static_cast<std::size_t>(k.range)]) {
    total += static_cast<double>(count) * k.values_for(key)[0];
  }
  return total / stats.vertex_count;
}

TraceCheck trace_identity(const Graph& g, const KernelSpec& k) {
  TraceCheck out;
  const SymMatrix m = assemble(g, k);
  out.diagonal_average = m.trace() / g.vertex_count();
  out.class_sum = trace_functional(class_census(g, k.range), k);
  const double scale = std::max(1.0, std::abs(out.diagonal_average));
  if (std::abs(out.class_sum - out.diagonal_average) > 1e-12 * scale) {
    throw InvariantViolation("trace identity failed: class sum " + std::to_string(out.class_sum) +
                             " vs diagonal average " + std::to_string(out.diagonal_average));
  }
  return out;
}

Rational atom_mass(const SpectralCDF& cdf, double lambda) {
  if (cdf.dimension() == 0) return Rational(0);
  return Rational(cdf.count_at_most(lambda) - cdf.count_below(lambda), cdf.dimension());
}

IdsReport ids_experiment(std::span<const Graph> seq, const KernelSpec& k, const std::optional<ReferenceCurve>& reference,
                         const SpectralOptions& options) {
  if (seq.empty()) throw InvalidInput("an IDS experiment needs at least one graph");
  IdsReport out;
  out.kernel = k.name;
  if (reference) out.reference = reference->name;
  out.members.resize(seq.size());
  std::vector<StatVector> stats;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto& m = out.members[i];
    m.vertex_count = seq[i].vertex_count();
    m.cdf = spectral_cdf(assemble(seq[i], k), options);
    if (reference) m.reference_distance = sup_distance(m.cdf, *reference);
    stats.push_back(class_census(seq[i], k.range, std::max(kDefaultCanonicalLimit, seq[i].vertex_count())));
    m.vanishes_on_member = true;
    for (const auto& [key, count] : stats.back().per_radius[static_cast<std::size_t>(k.range)]) {
      if (!k.vanishes_on(key)) {
        m.vanishes_on_member = false;
        break;
      }
    }
  }
  const std::size_t len = seq.size();
  std::vector<std::vector<double>> dist(len, std::vector<double>(len, -1.0));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (len <= 16 || j == i + 1 || j == len - 1) dist[i][j] = sup_distance(out.members[i].cdf, out.members[j].cdf);
    }
  }
  for (std::size_t i = 0; i + 1 < len; ++i) out.consecutive.push_back(dist[i][i + 1]);
  out.tail_sup.assign(len > 1 ? len - 1 : 0, 0.0);
  for (std::size_t m = len - 1; m-- > 0;) {
    double best = m + 1 < len - 1 ? out.tail_sup[m + 1] : 0.0;
    for (std::size_t j = m + 1; j < len; ++j) best = std::max(best, dist[m][j]);
    out.tail_sup[m] = best;
  }
  out.null_sequence = true;
  for (std::size_t i = len / 2; i < len; ++i) {
    if (!out.members[i].vanishes_on_member) out.null_sequence = false;
  }
  return out;
}

}  // namespace graphlim
