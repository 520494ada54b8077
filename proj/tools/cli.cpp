#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "graphlim/edge_list.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"
#include "graphlim/independent_sets.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/sequence.hpp"
#include "graphlim/serialize.hpp"
#include "graphlim/spectral.hpp"

#ifndef GRAPHLIM_VERSION
#define GRAPHLIM_VERSION "unknown"
#endif

namespace graphlim::cli {

namespace {

namespace fs = std::filesystem;

struct CsvFile {
  std::string name;
  std::string content;
};

struct Outcome {
  Json results = Json::object();
  std::vector<CsvFile> csv;
};

struct Common {
  std::string out_dir;
  std::string format = "json";
  int threads = 0;
  std::uint64_t seed = 1;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("GRAPHLIM_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("GRAPHLIM_SEED must be a nonnegative integer, got '" + std::string(env) + "'");
  }
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InvalidInput("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::vector<Graph> load_graphs(const std::vector<std::string>& files) {
  std::vector<Graph> out;
  for (const auto& f : files) out.push_back(read_edge_list(f));
  return out;
}

int shared_degree(const std::vector<Graph>& graphs) {
  int d = 1;
  for (const auto& g : graphs) d = std::max(d, g.degree_bound());
  return d;
}

std::vector<Graph> lift(std::vector<Graph> graphs) {
  const int d = shared_degree(graphs);
  for (auto& g : graphs) {
    if (g.degree_bound() != d) g = g.with_degree_bound(d);
  }
  return graphs;
}

std::vector<Graph> sequence_input(const std::string& manifest, const std::vector<std::string>& files, Json& config) {
  if (!manifest.empty() && !files.empty()) throw InvalidInput("pass either --seq or graph files, not both");
  if (!manifest.empty()) {
    const SequenceManifest m = read_manifest(manifest);
    Json members = Json::array();
    for (const auto& mem : m.members) members.push_back(mem.generator ? mem.generator->describe() : *mem.path);
    config["manifest"] = Json{{"path", manifest},
                              {"d", m.degree_bound},
                              {"members", members},
                              {"hyperfinite_expected", m.hyperfinite_expected}};
    return m.load();
  }
  if (files.empty()) throw InvalidInput("no input graphs: pass --seq MANIFEST or edge-list files");
  config["inputs"] = files;
  return lift(load_graphs(files));
}

// ---- gen ----

struct GenOptions {
  std::string family;
  std::int64_t n = -1;
  std::int64_t b = -1;
  std::int64_t dim = 2;
  std::int64_t depth = -1;
  std::int64_t d = -1;
  std::string output;
};

Outcome run_gen(const GenOptions& o, const Common& c, Json& config, std::ostream& out) {
  GeneratorSpec spec;
  spec.family = o.family;
  spec.seed = c.seed;
  if (o.n >= 0) spec.params["n"] = o.n;
  if (o.b >= 0) spec.params["b"] = o.b;
  if (o.depth >= 0) spec.params["depth"] = o.depth;
  if (o.d >= 0) spec.params["d"] = o.d;
  if ((o.family == "torus" || o.family == "box") && o.b >= 0) spec.params["dim"] = o.dim;
  config["family"] = o.family;
  config["params"] = spec.params;
  config["seed"] = c.seed;
  config["output"] = o.output;
  const Graph g = spec.generate();
  Outcome r;
  const std::string text = to_edge_list(g);
  if (o.output.empty()) {
    out << text;
  } else {
    write_atomic(o.output, text);
  }
  r.results = Json{{"generator", spec.describe()},
                   {"vertex_count", g.vertex_count()},
                   {"edge_count", g.edge_count()},
                   {"degree_bound", g.degree_bound()},
                   {"max_degree", g.max_degree()}};
  return r;
}

// ---- stats ----

struct StatsOptions {
  int radius = 1;
  int canonical_limit = kDefaultCanonicalLimit;
  double stable_tolerance = 1e-2;
  std::string seq;
  std::vector<std::string> files;
};

void check_census(const StatVector& s) {
  for (const auto& per : s.per_radius) {
    std::int64_t total = 0;
    for (const auto& [k, count] : per) total += count;
    if (total != s.vertex_count) throw InvariantViolation("census counts do not sum to the vertex count");
  }
}

Outcome run_stats(const StatsOptions& o, Json& config) {
  config["radius"] = o.radius;
  config["canonical_limit"] = o.canonical_limit;
  config["stable_tolerance"] = o.stable_tolerance;
  const auto graphs = sequence_input(o.seq, o.files, config);
  Outcome r;
  if (graphs.size() == 1) {
    const StatVector s = class_census(graphs[0], o.radius, o.canonical_limit);
    check_census(s);
    r.results = json_of(s);
    std::string csv = "class,radius,ball_size,num,den,frequency\n";
    for (const auto& [key, f] : s.classes()) {
      csv += key.hex() + "," + std::to_string(key.radius) + "," + std::to_string(key.size) + "," +
             std::to_string(f.num()) + "," + std::to_string(f.den()) + "," + fmt(f.to_double()) + "\n";
    }
    r.csv.push_back({"classes.csv", csv});
    return r;
  }
  const WeakCauchyProfile p = weak_cauchy_profile(graphs, o.radius, o.stable_tolerance, o.canonical_limit);
  for (const auto& s : p.stats) check_census(s);
  r.results = json_of(p);
  std::string csv = "index,n,consecutive,tail_sup\n";
  for (std::size_t i = 0; i + 1 < p.sizes.size(); ++i) {
    csv += std::to_string(i) + "," + std::to_string(p.sizes[i]) + "," + fmt(p.consecutive[i]) + "," +
           fmt(p.tail_sup[i]) + "\n";
  }
  r.csv.push_back({"weak_profile.csv", csv});
  return r;
}

// ---- dist ----

struct DistOptions {
  std::string metric = "deltaS";
  std::string mode = "auto";
  std::string comparison = "induced";
  int exact_limit = kDefaultExactLimit;
  int multiple_cap = 3;
  std::string seq;
  double partition_eps = 0.0;
  std::vector<std::string> files;
};

void check_estimate(const DistanceEstimate& e, const Graph& g, const Graph& h, StarComparison mode) {
  if (!(e.value >= 0.0 && e.value <= 1.0)) throw InvariantViolation("distance estimate outside [0, 1]");
  if (e.kind == EstimateKind::exact && !e.permutation && !(g.empty() || h.empty())) {
    throw InvariantViolation("exact estimate without a witness");
  }
  if (e.permutation && !e.q && g.vertex_count() == h.vertex_count() && !g.empty()) {
    const double again = delta(g, relabel(h, *e.permutation), mode);
    if (std::abs(again - e.value) > 1e-12) throw InvariantViolation("witness does not reproduce the estimate");
  }
}

Outcome run_dist(const DistOptions& o, const Common& c, Json& config) {
  config["metric"] = o.metric;
  config["mode"] = o.mode;
  config["comparison"] = o.comparison;
  config["exact_limit"] = o.exact_limit;
  config["multiple_cap"] = o.multiple_cap;
  config["seed"] = c.seed;
  const StarComparison cmp = parse_star_comparison(o.comparison);
  DeltaSOptions ds;
  ds.comparison = cmp;
  ds.exact_limit = o.exact_limit;
  ds.seed = c.seed;
  Outcome r;
  if (!o.seq.empty()) {
    if (o.metric != "deltaRho") throw InvalidInput("--seq profiles need --metric deltaRho");
    config["partition_eps"] = o.partition_eps;
    const auto graphs = sequence_input(o.seq, o.files, config);
    DeltaRhoOptions ro;
    ro.delta_s = ds;
    ro.multiple_cap = o.multiple_cap;
    std::vector<Partition> parts;
    if (o.partition_eps > 0.0) {
      for (const auto& g : graphs) {
        parts.push_back(partition_auto(g, o.partition_eps, c.seed));
        validate_partition(g, parts.back());
      }
    }
    const StrongCauchyProfile p = strong_cauchy_profile(graphs, ro, parts, o.partition_eps);
    r.results = json_of(p);
    std::string csv = "index,n,tail_sup\n";
    for (std::size_t i = 0; i < p.tail_sup.size(); ++i) {
      csv += std::to_string(i) + "," + std::to_string(p.sizes[i]) + "," + fmt(p.tail_sup[i]) + "\n";
    }
    r.csv.push_back({"strong_profile.csv", csv});
    return r;
  }
  if (o.files.size() != 2) throw InvalidInput("dist needs exactly two edge-list files");
  config["inputs"] = o.files;
  auto graphs = lift(load_graphs(o.files));
  const Graph& g = graphs[0];
  const Graph& h = graphs[1];
  if (o.metric == "delta") {
    const double v = delta(g, h, cmp);
    r.results = Json{{"value", v}, {"kind", "exact"}};
  } else if (o.metric == "deltaS") {
    if (o.mode != "auto" && o.mode != "exact" && o.mode != "heuristic") {
      throw InvalidInput("--mode must be auto, exact or heuristic");
    }
    const bool exact = o.mode == "exact" || (o.mode == "auto" && g.vertex_count() <= o.exact_limit);
    const DistanceEstimate e = exact ? delta_s_exact(g, h, ds) : delta_s_heuristic(g, h, ds);
    check_estimate(e, g, h, cmp);
    r.results = json_of(e);
  } else if (o.metric == "deltaRho") {
    DeltaRhoOptions ro;
    ro.delta_s = ds;
    ro.multiple_cap = o.multiple_cap;
    const DistanceEstimate e = delta_rho(g, h, ro);
    check_estimate(e, g, h, cmp);
    r.results = json_of(e);
  } else {
    throw InvalidInput("--metric must be delta, deltaS or deltaRho");
  }
  return r;
}

// ---- partition ----

struct PartitionOptions {
  std::string strategy = "auto";
  double eps = 0.1;
  int max_component = 0;
  bool cut_edges = false;
  std::string file;
};

Outcome run_partition(const PartitionOptions& o, const Common& c, Json& config) {
  config["strategy"] = o.strategy;
  config["eps"] = o.eps;
  config["max_component"] = o.max_component;
  config["seed"] = c.seed;
  config["input"] = o.file;
  const Graph g = read_edge_list(o.file);
  Partition p;
  if (o.strategy == "auto") {
    p = partition_auto(g, o.eps, c.seed);
  } else if (o.strategy == "path") {
    p = partition_path_like(g, o.eps);
  } else if (o.strategy == "torus") {
    p = partition_torus(g, o.eps);
  } else if (o.strategy == "tree") {
    p = partition_tree(g, o.eps);
  } else if (o.strategy == "carve") {
    CarveOptions co;
    co.eps = o.eps;
    co.seed = c.seed;
    co.max_component = o.max_component;
    p = partition_ball_carving(g, co);
  } else {
    throw InvalidInput("--strategy must be auto, path, torus, tree or carve");
  }
  validate_partition(g, p);
  Outcome r;
  r.results = json_of(p, o.cut_edges);
  std::string csv = "class,size,vertices,components,c,gamma\n";
  for (const auto& [key, vertices] : p.class_vertices) {
    csv += key.hex() + "," + std::to_string(key.size) + "," + std::to_string(vertices) + "," +
           std::to_string(p.class_components.at(key)) + "," + fmt(p.c(key).to_double()) + "," +
           fmt(p.gamma(key).to_double()) + "\n";
  }
  r.csv.push_back({"classes.csv", csv});
  return r;
}

// ---- limit ----

struct LimitOptions {
  std::string functional;
  std::string seq;
  double tolerance = 1e-3;
  bool check_pairs = false;
  int exact_limit = kDefaultExactLimit;
  std::vector<std::string> files;
};

Outcome run_limit(const LimitOptions& o, const Common& c, Json& config) {
  config["functional"] = o.functional;
  config["tolerance"] = o.tolerance;
  config["check_pairs"] = o.check_pairs;
  config["exact_limit"] = o.exact_limit;
  config["seed"] = c.seed;
  const auto graphs = sequence_input(o.seq, o.files, config);
  const GraphFunctional f = builtin_functional(o.functional, shared_degree(graphs));
  const NormalizedLimitReport lim = normalized_limit(f, graphs, o.tolerance);
  Outcome r;
  r.results["kind"] = to_string(f.kind);
  if (f.almost_additive_constant) r.results["declared_D"] = *f.almost_additive_constant;
  if (f.bound_constant) r.results["declared_C"] = *f.bound_constant;
  r.results["normalized_limit"] = json_of(lim);
  std::string csv = "index,n,normalized,profile\n";
  for (std::size_t i = 0; i < lim.sizes.size(); ++i) {
    const auto& v = lim.normalized[i];
    csv += std::to_string(i) + "," + std::to_string(lim.sizes[i]) + "," +
           (v.is_scalar() ? fmt(v.scalar()) : fmt(v.norm())) + "," +
           (i < lim.profile.size() ? fmt(lim.profile[i]) : std::string()) + "\n";
  }
  r.csv.push_back({"normalized.csv", csv});
  if (f.kind == FunctionalKind::subadditive) r.results["subadditive_limit"] = json_of(subadditive_limit(f, graphs));
  if (o.check_pairs && graphs.size() > 1) {
    std::vector<std::pair<Graph, Graph>> pairs;
    for (std::size_t i = 0; i + 1 < graphs.size(); ++i) pairs.emplace_back(graphs[i], graphs[i + 1]);
    AlmostAdditiveOptions ao;
    ao.delta_s.exact_limit = o.exact_limit;
    ao.delta_s.seed = c.seed;
    r.results["almost_additivity"] = json_of(verify_almost_additive(f, pairs, ao));
  }
  return r;
}

// ---- subadd ----

struct SubaddOptions {
  std::string functional = "log-indep-sets";
  std::string samples;
  int trials = 4;
  bool strict = false;
  std::vector<std::string> files;
};

Outcome run_subadd(const SubaddOptions& o, const Common& c, Json& config) {
  config["functional"] = o.functional;
  config["trials"] = o.trials;
  config["strict"] = o.strict;
  config["seed"] = c.seed;
  auto graphs = sequence_input(o.samples, o.files, config);
  const GraphFunctional f = builtin_functional(o.functional, shared_degree(graphs));
  SubadditiveOptions so;
  so.seed = c.seed;
  so.trials = o.trials;
  so.strict = o.strict;
  const SubadditiveReport rep = check_subadditive_axioms(f, graphs, so);
  Outcome r;
  r.results = json_of(rep);
  std::string csv = "axiom,checks,violations,skipped\n";
  for (const auto& a : rep.axioms) {
    csv += a.axiom + "," + std::to_string(a.checks) + "," + std::to_string(a.violations.size()) + "," +
           (a.skipped ? "true" : "false") + "\n";
  }
  r.csv.push_back({"axioms.csv", csv});
  return r;
}

// ---- ids ----

struct IdsOptions {
  std::string kernel = "laplacian";
  std::string seq;
  std::string reference;
  std::string mode = "auto";
  int dense_limit = 4000;
  std::vector<std::string> files;
};

void check_cdf(const SpectralCDF& cdf) {
  if (!cdf.is_dense()) return;
  const auto& counts = cdf.cumulative_counts();
  if (cdf.dimension() > 0 && (counts.empty() || counts.back() != cdf.dimension())) {
    throw InvariantViolation("spectral CDF does not reach 1");
  }
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] <= counts[i - 1]) throw InvariantViolation("spectral CDF is not increasing");
  }
}

Outcome run_ids(const IdsOptions& o, Json& config) {
  config["kernel"] = o.kernel;
  config["reference"] = o.reference;
  config["mode"] = o.mode;
  config["dense_limit"] = o.dense_limit;
  const auto graphs = sequence_input(o.seq, o.files, config);
  const KernelSpec k = load_kernel(o.kernel);
  SpectralOptions so;
  so.dense_limit = o.dense_limit;
  if (o.mode == "dense") {
    so.mode = SpectrumMode::dense;
  } else if (o.mode == "inertia") {
    so.mode = SpectrumMode::inertia;
  } else if (o.mode != "auto") {
    throw InvalidInput("--mode must be auto, dense or inertia");
  }
  std::optional<ReferenceCurve> ref;
  if (!o.reference.empty()) ref = reference_curve(o.reference, k.name, shared_degree(graphs));
  const IdsReport rep = ids_experiment(graphs, k, ref, so);
  for (const auto& m : rep.members) check_cdf(m.cdf);
  Outcome r;
  r.results = json_of(rep);
  std::string csv = "n,sup_distance\n";
  for (const auto& m : rep.members) {
    csv += std::to_string(m.vertex_count) + "," + (m.reference_distance ? fmt(*m.reference_distance) : "") + "\n";
  }
  r.csv.push_back({"sup_distance.csv", csv});
  std::string prof = "index,n,consecutive,tail_sup\n";
  for (std::size_t i = 0; i < rep.consecutive.size(); ++i) {
    prof += std::to_string(i) + "," + std::to_string(rep.members[i].vertex_count) + "," + fmt(rep.consecutive[i]) +
            "," + fmt(rep.tail_sup[i]) + "\n";
  }
  r.csv.push_back({"ids_profile.csv", prof});
  for (std::size_t i = 0; i < rep.members.size(); ++i) {
    const auto& cdf = rep.members[i].cdf;
    std::string text = "lambda,N\n";
    if (cdf.is_dense()) {
      const auto& jumps = cdf.jump_points();
      for (std::size_t j = 0; j < jumps.size(); ++j) {
        text += fmt(jumps[j]) + "," + fmt(static_cast<double>(cdf.cumulative_counts()[j]) / cdf.dimension()) + "\n";
      }
    } else {
      for (double t : comparison_grid(cdf)) text += fmt(t) + "," + fmt(cdf(t)) + "\n";
    }
    r.csv.push_back({"cdf_" + std::to_string(i) + "_n" + std::to_string(rep.members[i].vertex_count) + ".csv", text});
  }
  return r;
}

// ---- fekete ----

struct FeketeOptions {
  std::string input;
  std::size_t witnesses = 16;
};

std::vector<double> read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  bool indexed = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    auto number = [&](const std::string& s, double& x) {
      try {
        std::size_t used = 0;
        x = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        return used == s.size();
      } catch (const std::exception&) {
        return false;
      }
    };
    double last = 0.0;
    if (cells.empty() || !number(cells.back(), last)) {
      if (values.empty() && lineno == 1) continue;  // header
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected a number");
    }
    if (cells.size() == 2) {
      double idx = 0.0;
      if (!number(cells[0], idx)) throw InvalidInput(path + ":" + std::to_string(lineno) + ": bad index");
      if (idx != static_cast<double>(values.size() + 1)) {
        throw InvalidInput(path + ":" + std::to_string(lineno) + ": indices must run 1, 2, 3, ...");
      }
      indexed = true;
    } else if (cells.size() != 1 || indexed) {
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected 'a' or 'n,a'");
    }
    values.push_back(last);
  }
  if (values.empty()) throw InvalidInput("'" + path + "' contains no sequence values");
  return values;
}

Outcome run_fekete(const FeketeOptions& o, Json& config) {
  config["input"] = o.input;
  config["witnesses"] = o.witnesses;
  const auto a = read_sequence_csv(o.input);
  const FeketeReport rep = fekete_limit(a, o.witnesses);
  Outcome r;
  r.results = json_of(rep);
  r.results["terms"] = a.size();
  std::string csv = "n,a,ratio\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    csv += std::to_string(i + 1) + "," + fmt(a[i]) + "," + fmt(a[i] / static_cast<double>(i + 1)) + "\n";
  }
  r.csv.push_back({"ratios.csv", csv});
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graphlim: local statistics, distances and limits of bounded-degree graph sequences", "graphlim"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", common.out_dir, "write report.json and CSV files into this directory");
  app.add_option("--format", common.format, "stdout format when --out is not given")
      ->check(CLI::IsMember({"json", "csv"}));
  std::uint64_t seed_flag = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed_flag, "random seed (default: $GRAPHLIM_SEED or 1)");
  app.set_version_flag("--version", GRAPHLIM_VERSION);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph family member as an edge list");
  gen_cmd->add_option("--family", gen.family, "path, cycle, torus, box, tree-ball, random-regular")->required();
  gen_cmd->add_option("--n", gen.n, "vertex count (path, cycle, random-regular)");
  gen_cmd->add_option("--b", gen.b, "side length (torus, box)");
  gen_cmd->add_option("--dim", gen.dim, "dimension 1 or 2 (torus, box)");
  gen_cmd->add_option("--depth", gen.depth, "depth (tree-ball)");
  gen_cmd->add_option("--d", gen.d, "degree (random-regular)");
  gen_cmd->add_option("-o,--output", gen.output, "edge-list output file (default: stdout)");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "local statistics of a graph, or a weak Cauchy profile of a sequence");
  stats_cmd->add_option("--radius", stats.radius, "census radius")->check(CLI::NonNegativeNumber);
  stats_cmd->add_option("--canonical-limit", stats.canonical_limit, "largest ball to canonicalize");
  stats_cmd->add_option("--stable-tolerance", stats.stable_tolerance, "spread below which a frequency is stable");
  stats_cmd->add_option("--seq", stats.seq, "sequence manifest");
  stats_cmd->add_option("files", stats.files, "edge-list files");

  DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "star distances between two graphs, or a strong Cauchy profile");
  dist_cmd->add_option("--metric", dist.metric, "delta, deltaS or deltaRho")
      ->check(CLI::IsMember({"delta", "deltaS", "deltaRho"}));
  dist_cmd->add_option("--mode", dist.mode, "auto, exact or heuristic (deltaS)");
  dist_cmd->add_option("--comparison", dist.comparison, "induced or incident star comparison");
  dist_cmd->add_option("--exact-limit", dist.exact_limit, "largest vertex count searched exactly");
  dist_cmd->add_option("--multiple-cap", dist.multiple_cap, "multiples of the minimal pair tried (deltaRho)")
      ->check(CLI::PositiveNumber);
  dist_cmd->add_option("--seq", dist.seq, "sequence manifest for a strong Cauchy profile");
  dist_cmd->add_option("--partition-eps", dist.partition_eps, "also use partition bounds at this edge fraction");
  dist_cmd->add_option("files", dist.files, "two edge-list files");

  PartitionOptions part;
  auto* part_cmd = app.add_subcommand("partition", "cut a graph into small components");
  part_cmd->add_option("--strategy", part.strategy, "auto, path, torus, tree or carve");
  part_cmd->add_option("--eps", part.eps, "edge-removal fraction");
  part_cmd->add_option("--max-component", part.max_component, "component size cap for carving (0 = none)");
  part_cmd->add_flag("--cut-edges", part.cut_edges, "list the cut edges in the report");
  part_cmd->add_option("file", part.file, "edge-list file")->required();

  LimitOptions lim;
  auto* lim_cmd = app.add_subcommand("limit", "normalized limit of a functional along a sequence");
  lim_cmd->add_option("--functional", lim.functional, "vcount, ecount, log-indep-sets, eig-count:<kernel>")
      ->required();
  lim_cmd->add_option("--seq", lim.seq, "sequence manifest");
  lim_cmd->add_option("--tolerance", lim.tolerance, "convergence tolerance");
  lim_cmd->add_flag("--check-pairs", lim.check_pairs, "verify almost-additivity on consecutive members");
  lim_cmd->add_option("--exact-limit", lim.exact_limit, "largest vertex count searched exactly");
  lim_cmd->add_option("files", lim.files, "edge-list files");

  SubaddOptions sub;
  auto* sub_cmd = app.add_subcommand("subadd", "check the subadditive axioms on sample graphs");
  sub_cmd->add_option("--functional", sub.functional, "scalar functional name");
  sub_cmd->add_option("--samples", sub.samples, "manifest of sample graphs");
  sub_cmd->add_option("--trials", sub.trials, "random trials per sample and axiom")->check(CLI::NonNegativeNumber);
  sub_cmd->add_flag("--strict", sub.strict, "also test non-induced subgraphs");
  sub_cmd->add_option("files", sub.files, "edge-list files");

  IdsOptions ids;
  auto* ids_cmd = app.add_subcommand("ids", "spectral distributions of a kernel along a sequence");
  ids_cmd->add_option("--kernel", ids.kernel, "adjacency, laplacian, graph-laplacian, zero, or a kernel JSON file");
  ids_cmd->add_option("--seq", ids.seq, "sequence manifest");
  ids_cmd->add_option("--reference", ids.reference, "arccos-1d or kesten-mckay");
  ids_cmd->add_option("--mode", ids.mode, "auto, dense or inertia");
  ids_cmd->add_option("--dense-limit", ids.dense_limit, "largest matrix solved densely");
  ids_cmd->add_option("files", ids.files, "edge-list files");

  FeketeOptions fek;
  auto* fek_cmd = app.add_subcommand("fekete", "subadditivity check and limit of a real sequence");
  fek_cmd->add_option("--input", fek.input, "CSV with one value per line, or 'n,a' rows")->required();
  fek_cmd->add_option("--witnesses", fek.witnesses, "violations listed in the report");

  std::vector<std::string> argv_store{"graphlim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    common.seed = seed_opt->count() > 0 ? seed_flag : default_seed();
    set_thread_count(common.threads);
    Json config = Json::object();
    Outcome outcome;
    std::string command;
    std::ostringstream edge_sink;
    if (gen_cmd->parsed()) {
      command = "gen";
      outcome = run_gen(gen, common, config, gen.output.empty() ? out : edge_sink);
    } else if (stats_cmd->parsed()) {
      command = "stats";
      outcome = run_stats(stats, config);
    } else if (dist_cmd->parsed()) {
      command = "dist";
      outcome = run_dist(dist, common, config);
    } else if (part_cmd->parsed()) {
      command = "partition";
      outcome = run_partition(part, common, config);
    } else if (lim_cmd->parsed()) {
      command = "limit";
      outcome = run_limit(lim, common, config);
    } else if (sub_cmd->parsed()) {
      command = "subadd";
      outcome = run_subadd(sub, common, config);
    } else if (ids_cmd->parsed()) {
      command = "ids";
      outcome = run_ids(ids, config);
    } else {
      command = "fekete";
      outcome = run_fekete(fek, config);
    }
    config["threads"] = common.threads;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json report{{"command", command},
                {"config", config},
                {"version", Json{{"graphlim", GRAPHLIM_VERSION}, {"compiler", __VERSION__}}},
                {"wall_time_s", wall},
                {"results", outcome.results}};
    if (!common.out_dir.empty()) {
      fs::create_directories(common.out_dir);
      write_atomic(fs::path(common.out_dir) / "report.json", report.dump(2) + "\n");
      for (const auto& f : outcome.csv) write_atomic(fs::path(common.out_dir) / f.name, f.content);
      if (!(command == "gen" && gen.output.empty())) out << (fs::path(common.out_dir) / "report.json").string() << "\n";
    } else if (command == "gen" && gen.output.empty()) {
      // the edge list already went to stdout
    } else if (common.format == "csv" && !outcome.csv.empty()) {
      out << outcome.csv.front().content;
    } else {
      out << report.dump(2) << "\n";
    }
    return 0;
  } catch (const InvariantViolation& e) {
    err << "graphlim: internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "graphlim: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "graphlim: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "graphlim: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphlim::cli
