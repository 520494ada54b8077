#include "graphlim/sequence.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "graphlim/edge_list.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

Graph gen_path(int n) {
  if (n < 1) throw InvalidInput("path needs n >= 1, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges, 2);
}

Graph gen_cycle(int n) {
  if (n < 3) throw InvalidInput("cycle needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, edges, 2);
}

Graph gen_torus(int b, int dim) {
  if (b < 3) throw InvalidInput("torus needs side b >= 3, got " + std::to_string(b));
  if (dim == 1) return gen_cycle(b);
  if (dim != 2) throw InvalidInput("torus dimension must be 1 or 2");
  std::vector<Edge> edges;
  for (int r = 0; r < b; ++r) {
    for (int c = 0; c < b; ++c) {
      const int v = r * b + c;
      const int right = r * b + (c + 1) % b;
      const int down = ((r + 1) % b) * b + c;
      edges.emplace_back(std::min(v, right), std::max(v, right));
      edges.emplace_back(std::min(v, down), std::max(v, down));
    }
  }
  return Graph(b * b, edges, 4);
}

Graph gen_box(int b, int dim) {
  if (b < 1) throw InvalidInput("box needs side b >= 1, got " + std::to_string(b));
  if (dim == 1) return gen_path(b);
  if (dim != 2) throw InvalidInput("box dimension must be 1 or 2");
  std::vector<Edge> edges;
  for (int r = 0; r < b; ++r) {
    for (int c = 0; c < b; ++c) {
      const int v = r * b + c;
      if (c + 1 < b) edges.emplace_back(v, v + 1);
      if (r + 1 < b) edges.emplace_back(v, v + b);
    }
  }
  return Graph(b * b, edges, 4);
}

Graph gen_tree_ball(int depth) {
  if (depth < 0) throw InvalidInput("tree depth must be nonnegative");
  if (depth > 24) throw InvalidInput("tree depth above 24 is not supported");
  const int n = (1 << (depth + 1)) - 1;
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
  return Graph(n, edges, 3);
}

RandomRegularResult gen_random_regular_traced(int n, int d, std::uint64_t seed, int attempt_cap) {
  if (d < 1) throw InvalidInput("regular degree must be positive");
  if (n <= d) throw InvalidInput("random " + std::to_string(d) + "-regular graph needs n > d");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw InvalidInput("n*d must be even for a " + std::to_string(d) + "-regular graph");
  }
  RandomRegularResult out;
  std::vector<int> points(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (int stream = 0; stream < 64; ++stream) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(stream));
    Rng rng(s);
    for (int attempt = 0; attempt < attempt_cap; ++attempt) {
      ++out.attempts;
      for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i) / d;
      rng.shuffle(points);
      seen.clear();
      edges.clear();
      bool simple = true;
      for (std::size_t i = 0; i < points.size(); i += 2) {
        const int u = std::min(points[i], points[i + 1]);
        const int v = std::max(points[i], points[i + 1]);
        if (u == v || !seen.insert({u, v}).second) {
          simple = false;
          break;
        }
        edges.emplace_back(u, v);
      }
      if (simple) {
        out.graph = Graph(n, edges, d);
        out.seed_used = s;
        return out;
      }
    }
    ++out.reseeds;
  }
  throw InvalidInput("pairing model found no simple " + std::to_string(d) + "-regular graph on " +
                     std::to_string(n) + " vertices within the attempt cap");
}

Graph gen_random_regular(int n, int d, std::uint64_t seed) { return gen_random_regular_traced(n, d, seed).graph; }

namespace {

std::int64_t param(const GeneratorSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw InvalidInput("generator '" + spec.family + "' needs parameter \"" + key + "\"");
  }
  return it->second;
}

std::int64_t param_or(const GeneratorSpec& spec, const std::string& key, std::int64_t fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

void allow_params(const GeneratorSpec& spec, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : spec.params) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      throw InvalidInput("generator '" + spec.family + "' does not take parameter \"" + k + "\"");
    }
  }
}

int as_int(std::int64_t x, const std::string& what) {
  if (x < 0 || x > (1 << 30)) throw InvalidInput(what + " out of range");
  return static_cast<int>(x);
}

}  // namespace

Graph GeneratorSpec::generate() const {
  if (family == "path") {
    allow_params(*this, {"n"});
    return gen_path(as_int(param(*this, "n"), "n"));
  }
  if (family == "cycle") {
    allow_params(*this, {"n"});
    return gen_cycle(as_int(param(*this, "n"), "n"));
  }
  if (family == "torus") {
    allow_params(*this, {"b", "dim"});
    return gen_torus(as_int(param(*this, "b"), "b"), as_int(param_or(*this, "dim", 2), "dim"));
  }
  if (family == "box") {
    allow_params(*this, {"b", "dim"});
    return gen_box(as_int(param(*this, "b"), "b"), as_int(param_or(*this, "dim", 2), "dim"));
  }
  if (family == "tree-ball") {
    allow_params(*this, {"depth"});
    return gen_tree_ball(as_int(param(*this, "depth"), "depth"));
  }
  if (family == "random-regular") {
    allow_params(*this, {"n", "d"});
    return gen_random_regular(as_int(param(*this, "n"), "n"), as_int(param(*this, "d"), "d"), seed);
  }
  throw InvalidInput("unknown family '" + family + "' (path, cycle, torus, box, tree-ball, random-regular)");
}

std::string GeneratorSpec::describe() const {
  std::string out = family;
  for (const auto& [k, v] : params) out += " " + k + "=" + std::to_string(v);
  if (family == "random-regular") out += " seed=" + std::to_string(seed);
  return out;
}

std::vector<Graph> SequenceManifest::load() const {
  if (members.empty()) throw InvalidInput("manifest lists no members");
  std::vector<Graph> graphs(members.size());
  parallel_for_chunks(members.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& m = members[i];
      graphs[i] = m.generator ? m.generator->generate() : read_edge_list(*m.path);
    }
  });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].max_degree() > degree_bound) {
      throw InvalidInput("manifest member " + std::to_string(i) + " has degree " +
                         std::to_string(graphs[i].max_degree()) + " above the manifest bound d = " +
                         std::to_string(degree_bound));
    }
    if (graphs[i].degree_bound() != degree_bound) graphs[i] = graphs[i].with_degree_bound(degree_bound);
    if (!allow_unordered && i > 0 && graphs[i].vertex_count() <= graphs[i - 1].vertex_count()) {
      throw InvalidInput("manifest member sizes must increase strictly (member " + std::to_string(i) + " has " +
                         std::to_string(graphs[i].vertex_count()) + " vertices); set \"allow_unordered\" to override");
    }
  }
  return graphs;
}

SequenceManifest parse_manifest(const std::string& text, const std::string& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw InvalidInput("manifest must be a JSON object");
  SequenceManifest m;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "d") {
        m.degree_bound = value.get<int>();
      } else if (key == "members") {
        for (const auto& entry : value) {
          ManifestMember member;
          if (!entry.is_object()) throw InvalidInput("manifest members must be objects");
          if (entry.contains("path")) {
            for (const auto& [k, v] : entry.items()) {
              if (k != "path") throw InvalidInput("unknown key \"" + k + "\" in a path member");
            }
            std::filesystem::path p = entry.at("path").get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            member.path = p.string();
          } else {
            GeneratorSpec spec;
            for (const auto& [k, v] : entry.items()) {
              if (k == "family") {
                spec.family = v.get<std::string>();
              } else if (k == "params") {
                for (const auto& [pk, pv] : v.items()) spec.params[pk] = pv.get<std::int64_t>();
              } else if (k == "seed") {
                spec.seed = v.get<std::uint64_t>();
              } else {
                throw InvalidInput("unknown key \"" + k + "\" in a generator member");
              }
            }
            if (spec.family.empty()) throw InvalidInput("generator member needs \"family\"");
            member.generator = spec;
          }
          m.members.push_back(std::move(member));
        }
      } else if (key == "tags") {
        for (const auto& [tk, tv] : value.items()) {
          if (tk == "hyperfinite-expected") {
            m.hyperfinite_expected = tv.get<std::string>();
            if (m.hyperfinite_expected != "yes" && m.hyperfinite_expected != "no" &&
                m.hyperfinite_expected != "unknown") {
              throw InvalidInput("tag \"hyperfinite-expected\" must be yes, no or unknown");
            }
          } else if (tk == "description") {
            m.description = tv.get<std::string>();
          } else {
            throw InvalidInput("unknown manifest tag \"" + tk + "\"");
          }
        }
      } else if (key == "allow_unordered") {
        m.allow_unordered = value.get<bool>();
      } else {
        throw InvalidInput("unknown manifest key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed manifest: " + std::string(e.what()));
  }
  if (!doc.contains("d")) throw InvalidInput("manifest needs the shared degree bound \"d\"");
  if (m.degree_bound < 1) throw InvalidInput("manifest degree bound must be positive");
  return m;
}

SequenceManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open manifest '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace graphlim
