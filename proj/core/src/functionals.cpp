#include "graphlim/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "graphlim/errors.hpp"
#include "graphlim/independent_sets.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::almost_additive:
      return "almost-additive";
    case FunctionalKind::subadditive:
      return "subadditive";
    case FunctionalKind::unknown:
      return "unknown";
  }
  return "unknown";
}

GraphFunctional eig_counting_functional(const KernelSpec& k, int degree_bound, const SpectralOptions& options) {
  GraphFunctional f;
  f.name = "eig-count:" + k.name;
  f.kind = FunctionalKind::almost_additive;
  f.almost_additive_constant = 4.0 * (degree_bound + 1);
  f.evaluate = [k, options](const Graph& g) -> NormedValue {
    if (g.empty()) return StepFunction();
    SpectralOptions dense = options;
    dense.mode = SpectrumMode::dense;
    return spectral_cdf(assemble(g, k), dense).counting_function();
  };
  return f;
}

GraphFunctional builtin_functional(const std::string& name, int degree_bound) {
  if (degree_bound < 1) throw InvalidInput("degree bound must be positive");
  GraphFunctional f;
  f.name = name;
  if (name == "vcount") {
    f.kind = FunctionalKind::almost_additive;
    f.almost_additive_constant = 0.0;
    f.bound_constant = 1.0;
    f.evaluate = [](const Graph& g) { return NormedValue(static_cast<double>(g.vertex_count())); };
  } else if (name == "ecount") {
    f.kind = FunctionalKind::almost_additive;
    f.almost_additive_constant = degree_bound / 2.0;
    f.bound_constant = degree_bound / 2.0;
    f.evaluate = [](const Graph& g) { return NormedValue(static_cast<double>(g.edge_count())); };
  } else if (name == "log-indep-sets") {
    f.kind = FunctionalKind::subadditive;
    f.bound_constant = 1.0;
    f.evaluate = [](const Graph& g) { return NormedValue(log2_independent_sets(g)); };
  } else if (name.rfind("eig-count:", 0) == 0) {
    return eig_counting_functional(load_kernel(name.substr(10)), degree_bound);
  } else {
    throw InvalidInput("unknown functional '" + name + "' (vcount, ecount, log-indep-sets, eig-count:<kernel>)");
  }
  return f;
}

namespace {

std::vector<NormedValue> evaluate_all(const GraphFunctional& f, std::span<const Graph> graphs) {
  std::vector<NormedValue> values(graphs.size());
  parallel_for_chunks(graphs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = f.evaluate(graphs[i]);
  });
  return values;
}

bool within(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

AlmostAdditiveReport verify_almost_additive(const GraphFunctional& f, std::span<const std::pair<Graph, Graph>> pairs,
                                            const AlmostAdditiveOptions& options) {
  AlmostAdditiveReport report;
  if (options.constant) {
    report.constant = *options.constant;
  } else if (f.almost_additive_constant) {
    report.constant = *f.almost_additive_constant;
  } else {
    throw InvalidInput("functional '" + f.name + "' declares no almost-additivity constant; pass one explicitly");
  }
  if (options.multiple_cap < 1) throw InvalidInput("multiple cap must be positive");
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [g, h] = pairs[idx];
    if (g.empty() || h.empty()) throw InvalidInput("almost-additivity pairs must be nonempty graphs");
    const NormedValue fg = f.evaluate(g);
    const NormedValue fh = f.evaluate(h);
    const int common = std::gcd(g.vertex_count(), h.vertex_count());
    const int p0 = h.vertex_count() / common;
    const int q0 = g.vertex_count() / common;
    for (int k = 1; k <= options.multiple_cap; ++k) {
      AlmostAdditiveCheck c;
      c.pair = idx;
      c.p = k * p0;
      c.q = k * q0;
      c.vertex_count = c.p * g.vertex_count();
      c.lhs = (static_cast<double>(c.p) * fg - static_cast<double>(c.q) * fh).norm();
      const Graph gp = disjoint_multiple(g, c.p);
      const Graph hq = disjoint_multiple(h, c.q);
      const DistanceEstimate d = c.vertex_count <= options.delta_s.exact_limit
                                     ? delta_s_exact(gp, hq, options.delta_s)
                                     : delta_s_heuristic(gp, hq, options.delta_s);
      c.delta = d.value;
      c.delta_kind = d.kind;
      c.rhs = report.constant * c.delta * c.vertex_count;
      c.pass = c.lhs <= c.rhs + options.tolerance * std::max(1.0, c.lhs);
      if (!c.pass) ++report.violations;
      if (c.lhs > options.tolerance) {
        const double needed = c.delta > 0.0 ? c.lhs / (c.delta * c.vertex_count)
                                            : std::numeric_limits<double>::infinity();
        report.empirical_constant = std::max(report.empirical_constant, needed);
      }
      report.checks.push_back(c);
    }
  }
  return report;
}

NormalizedLimitReport normalized_limit(const GraphFunctional& f, std::span<const Graph> seq, double tolerance) {
  if (seq.empty()) throw InvalidInput("normalized limit needs a nonempty sequence");
  NormalizedLimitReport out;
  out.tolerance = tolerance;
  const auto values = evaluate_all(f, seq);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].empty()) throw InvalidInput("normalized limit needs nonempty graphs");
    out.sizes.push_back(seq[i].vertex_count());
    out.normalized.push_back((1.0 / seq[i].vertex_count()) * values[i]);
  }
  out.estimate = out.normalized.back();
  const std::size_t len = seq.size();
  out.profile.assign(len > 1 ? len - 1 : 0, 0.0);
  std::vector<std::vector<double>> dist(len, std::vector<double>(len, 0.0));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (len <= 32 || j == i + 1 || j == len - 1) dist[i][j] = (out.normalized[i] - out.normalized[j]).norm();
    }
  }
  for (std::size_t m = len - 1; m-- > 0;) {
    double best = m + 1 < len - 1 ? out.profile[m + 1] : 0.0;
    for (std::size_t j = m + 1; j < len; ++j) best = std::max(best, dist[m][j]);
    out.profile[m] = best;
  }
  for (std::size_t m = 0; m < out.profile.size(); ++m) {
    if (out.profile[m] <= tolerance) {
      out.converged_from = m;
      break;
    }
  }
  if (len == 1) out.converged_from = 0;
  return out;
}

bool SubadditiveReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed(); });
}

namespace {

std::vector<Edge> random_edge_subset(const Graph& g, Rng& rng) {
  std::vector<Edge> keep;
  for (const Edge& e : g.edges()) {
    if (rng.below(2) == 0) keep.push_back(e);
  }
  return keep;
}

Graph sparsify(const Graph& g, Rng& rng) {
  const auto keep = random_edge_subset(g, rng);
  return Graph(g.vertex_count(), keep, g.degree_bound());
}

std::string subset_text(const std::vector<Vertex>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

SubadditiveReport check_subadditive_axioms(const GraphFunctional& h, std::span<const Graph> samples,
                                           const SubadditiveOptions& options) {
  SubadditiveReport report;
  report.strict = options.strict;
  auto eval = [&](const Graph& g) {
    const NormedValue v = h.evaluate(g);
    if (!v.is_scalar()) throw InvalidInput("subadditive axioms need a scalar functional, '" + h.name + "' is not");
    return v.scalar();
  };
  const double tol = options.tolerance;
  AxiomResult bounded{"boundedness", 0, {}, false};
  AxiomResult monotone{"monotonicity", 0, {}, false};
  AxiomResult subadd{"subadditivity", 0, {}, false};
  AxiomResult special{"special-additivity", 0, {}, false};
  AxiomResult pattern{"pattern-invariance", 0, {}, false};
  const std::optional<double> c = options.bound_constant ? options.bound_constant : h.bound_constant;
  bounded.skipped = !c.has_value();

  std::vector<double> value(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) value[s] = eval(samples[s]);

  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Graph& g = samples[s];
    const double hg = value[s];
    const int n = g.vertex_count();
    Rng rng(derive_seed(options.seed, s));

    if (c) {
      ++bounded.checks;
      if (hg > *c * n + tol * std::max(1.0, std::abs(hg))) {
        bounded.violations.push_back({s, "h(G) = " + fmt(hg) + " > C|V| = " + fmt(*c * n)});
      }
    }

    for (int t = 0; t < options.trials; ++t) {
      std::vector<Vertex> sub;
      for (Vertex v = 0; v < n; ++v) {
        if (rng.below(2) == 0) sub.push_back(v);
      }
      const Graph induced = induced_subgraph(g, sub).graph;
      const double hi = eval(induced);
      ++monotone.checks;
      if (hi > hg + tol * std::max(1.0, std::abs(hg))) {
        monotone.violations.push_back({s, "induced subgraph on " + subset_text(sub) + " has h = " + fmt(hi) +
                                              " > h(G) = " + fmt(hg)});
      }
      if (options.strict) {
        const Graph partial = sparsify(induced, rng);
        const double hp = eval(partial);
        ++monotone.checks;
        if (hp > hg + tol * std::max(1.0, std::abs(hg))) {
          monotone.violations.push_back({s, "subgraph on " + subset_text(sub) + " with " +
                                                std::to_string(partial.edge_count()) + " of " +
                                                std::to_string(induced.edge_count()) + " induced edges has h = " +
                                                fmt(hp) + " > h(G) = " + fmt(hg)});
        }
      }
    }

    for (int t = 0; t < std::max(1, options.trials); ++t) {
      std::vector<Vertex> a;
      std::vector<Vertex> b;
      for (Vertex v = 0; v < n; ++v) {
        // the first split is by label parity, so every edge between
        // consecutive labels is separated
        const bool left = t == 0 ? v % 2 == 0 : rng.below(2) == 0;
        (left ? a : b).push_back(v);
      }
      Graph ga = induced_subgraph(g, a).graph;
      Graph gb = induced_subgraph(g, b).graph;
      const double ha = eval(ga);
      const double hb = eval(gb);
      ++subadd.checks;
      if (hg > ha + hb + tol * std::max(1.0, std::abs(hg))) {
        subadd.violations.push_back({s, "split " + subset_text(a) + " | " + subset_text(b) + ": h(G) = " + fmt(hg) +
                                            " > " + fmt(ha) + " + " + fmt(hb)});
      }
      if (options.strict) {
        const double sa = eval(sparsify(ga, rng));
        const double sb = eval(sparsify(gb, rng));
        ++subadd.checks;
        if (hg > sa + sb + tol * std::max(1.0, std::abs(hg))) {
          subadd.violations.push_back({s, "split " + subset_text(a) + " | " + subset_text(b) +
                                              " with thinned parts: h(G) = " + fmt(hg) + " > " + fmt(sa) + " + " +
                                              fmt(sb)});
        }
      }
    }

    {
      const std::size_t other = (s + 1) % samples.size();
      const Graph& g2 = samples[other];
      const int d = std::max(g.degree_bound(), g2.degree_bound());
      const Graph u = disjoint_union(g.with_degree_bound(d), g2.with_degree_bound(d));
      const double hu = eval(u);
      ++special.checks;
      if (!within(hu, hg + value[other], tol)) {
        special.violations.push_back({s, "h(G + G'), G' = sample " + std::to_string(other) + ": " + fmt(hu) +
                                             " != " + fmt(hg) + " + " + fmt(value[other])});
      }
      const auto comps = connected_components(g);
      if (comps.size() > 1) {
        std::vector<Vertex> rest;
        for (std::size_t i = 1; i < comps.size(); ++i) rest.insert(rest.end(), comps[i].begin(), comps[i].end());
        const double h1 = eval(induced_subgraph(g, comps[0]).graph);
        const double h2 = eval(induced_subgraph(g, rest).graph);
        ++special.checks;
        if (!within(hg, h1 + h2, tol)) {
          special.violations.push_back({s, "component split " + subset_text(comps[0]) + ": h(G) = " + fmt(hg) +
                                               " != " + fmt(h1) + " + " + fmt(h2)});
        }
      }
    }

    for (int t = 0; t < options.trials; ++t) {
      std::vector<Vertex> image(static_cast<std::size_t>(n));
      std::iota(image.begin(), image.end(), 0);
      rng.shuffle(image);
      const double hr = eval(relabel(g, VertexLabeling(image)));
      ++pattern.checks;
      if (!within(hg, hr, tol)) {
        pattern.violations.push_back({s, "relabeled copy has h = " + fmt(hr) + " != " + fmt(hg)});
      }
    }
  }
  report.axioms = {bounded, monotone, subadd, special, pattern};
  return report;
}

SubadditiveLimitReport subadditive_limit(const GraphFunctional& h, std::span<const Graph> seq, double floor) {
  if (seq.empty()) throw InvalidInput("subadditive limit needs a nonempty sequence");
  SubadditiveLimitReport out;
  const auto values = evaluate_all(h, seq);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].empty()) throw InvalidInput("subadditive limit needs nonempty graphs");
    out.sizes.push_back(seq[i].vertex_count());
    out.normalized.push_back(values[i].scalar() / seq[i].vertex_count());
  }
  const std::size_t begin = seq.size() / 2;
  out.tail_inf = *std::min_element(out.normalized.begin() + static_cast<std::ptrdiff_t>(begin), out.normalized.end());
  out.tail_sup = *std::max_element(out.normalized.begin() + static_cast<std::ptrdiff_t>(begin), out.normalized.end());
  out.gap = out.tail_sup - out.tail_inf;
  out.lambda = out.tail_inf;
  bool decreasing = true;
  for (std::size_t i = begin + 1; i < out.normalized.size(); ++i) {
    if (!(out.normalized[i] < out.normalized[i - 1])) decreasing = false;
  }
  if (out.normalized.back() < floor && decreasing) {
    out.minus_infinity = true;
    out.lambda = -std::numeric_limits<double>::infinity();
  }
  return out;
}

FeketeReport fekete_limit(std::span<const double> a, std::size_t max_witnesses) {
  FeketeReport out;
  const std::size_t len = a.size();
  if (len == 0) throw InvalidInput("Fekete check needs at least one term");
  out.infimum = a[0];
  for (std::size_t i = 0; i < len; ++i) {
    const double r = a[i] / static_cast<double>(i + 1);
    if (r < out.infimum) {
      out.infimum = r;
      out.infimum_at = static_cast<int>(i + 1);
    }
  }
  out.last_ratio = a[len - 1] / static_cast<double>(len);
  const std::size_t big = len;
  const std::size_t half = len / 2;
  if (half >= 1 && big > half) {
    out.tail_slope = (a[big - 1] - a[half - 1]) / static_cast<double>(big - half);
  } else {
    out.tail_slope = out.last_ratio;
  }
  for (std::size_t m = 1; m <= len; ++m) {
    for (std::size_t n = m; m + n <= len; ++n) {
      const double lhs = a[m + n - 1];
      const double rhs = a[m - 1] + a[n - 1];
      if (lhs > rhs) {
        ++out.violation_count;
        if (out.violations.size() < max_witnesses) {
          out.violations.push_back({static_cast<int>(m), static_cast<int>(n), lhs, rhs});
        }
      }
    }
  }
  return out;
}

}  // namespace graphlim
