#include "graphlim/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "graphlim/errors.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

Rational Partition::cut_fraction() const {
  if (edge_count == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(cut_edges.size()), edge_count);
}

Rational Partition::c(const CanonicalBallKey& alpha) const {
  const auto it = class_vertices.find(alpha);
  return Rational(it == class_vertices.end() ? 0 : it->second, vertex_count);
}

Rational Partition::gamma(const CanonicalBallKey& alpha) const {
  const auto it = class_components.find(alpha);
  return Rational(it == class_components.end() ? 0 : it->second, vertex_count);
}

int Partition::max_component_size() const {
  std::size_t best = 0;
  for (const auto& comp : components) best = std::max(best, comp.size());
  return static_cast<int>(best);
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidInput("eps must lie in (0, 1]");
}

int ceil_div_eps(double numerator, double eps) {
  // ceil with a small guard so that e.g. 2/0.25 gives exactly 8
  const double q = numerator / eps;
  const double r = std::round(q);
  if (std::abs(q - r) < 1e-9 * std::max(1.0, q)) return static_cast<int>(r);
  return static_cast<int>(std::ceil(q));
}

Edge ordered(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Relative adjacency pattern of a sorted component; translated copies of
// the same shape share a pattern and therefore one canonicalization.
std::string component_pattern(const Graph& g, const std::vector<Vertex>& comp) {
  std::string pattern;
  for (Vertex v : comp) {
    pattern.push_back(static_cast<char>(g.degree(v)));
    for (Vertex w : g.neighbors(v)) {
      const auto idx = static_cast<std::uint32_t>(std::lower_bound(comp.begin(), comp.end(), w) - comp.begin());
      for (int k = 0; k < 3; ++k) pattern.push_back(static_cast<char>((idx >> (8 * k)) & 0xffU));
    }
  }
  return pattern;
}

}  // namespace

Partition make_partition(const Graph& g, std::vector<Edge> cut, int size_bound, std::string strategy,
                         int canonical_limit) {
  for (auto& e : cut) e = ordered(e.first, e.second);
  std::sort(cut.begin(), cut.end());
  if (std::adjacent_find(cut.begin(), cut.end()) != cut.end()) throw InvariantViolation("duplicate cut edge");
  const Graph rest = remove_edges(g, cut);
  Partition p;
  p.vertex_count = g.vertex_count();
  p.edge_count = g.edge_count();
  p.degree_bound = g.degree_bound();
  p.strategy = std::move(strategy);
  p.size_bound = size_bound;
  p.cut_edges = std::move(cut);
  p.components = connected_components(rest);
  std::unordered_map<std::string, CanonicalBallKey> cache;
  for (const auto& comp : p.components) {
    std::string pattern = component_pattern(rest, comp);
    auto it = cache.find(pattern);
    if (it == cache.end()) {
      const RootedGraph sub = induced_subgraph(rest, comp);
      it = cache.emplace(std::move(pattern), canonical_form_unrooted(sub.graph, canonical_limit).key).first;
    }
    p.class_vertices[it->second] += static_cast<std::int64_t>(comp.size());
    p.class_components[it->second] += 1;
  }
  return p;
}

void validate_partition(const Graph& g, const Partition& p) {
  auto fail = [](const std::string& why) { throw InvariantViolation("partition invalid: " + why); };
  if (p.vertex_count != g.vertex_count() || p.edge_count != g.edge_count()) fail("source graph mismatch");
  for (const auto& [u, v] : p.cut_edges) {
    if (u >= v || !g.has_edge(u, v)) fail("cut edge is not an edge of the source");
  }
  if (!std::is_sorted(p.cut_edges.begin(), p.cut_edges.end()) ||
      std::adjacent_find(p.cut_edges.begin(), p.cut_edges.end()) != p.cut_edges.end()) {
    fail("cut edges not sorted and unique");
  }
  const auto expected = connected_components(remove_edges(g, p.cut_edges));
  if (expected != p.components) fail("components do not match the graph minus the cut");
  for (const auto& comp : p.components) {
    if (static_cast<int>(comp.size()) > p.size_bound) fail("component above the size bound");
  }
  std::int64_t total = 0;
  std::int64_t comps = 0;
  for (const auto& [key, count] : p.class_vertices) total += count;
  for (const auto& [key, count] : p.class_components) comps += count;
  if (total != p.vertex_count) fail("class frequencies do not sum to 1");
  if (comps != static_cast<std::int64_t>(p.components.size())) fail("component counts do not add up");
  if (static_cast<std::int64_t>(p.cut_edges.size()) > p.edge_count) fail("more cut edges than edges");
}

bool is_path_like(const Graph& g) { return g.max_degree() <= 2; }

bool is_forest(const Graph& g) {
  const auto comps = connected_components(g);
  return g.edge_count() == static_cast<std::int64_t>(g.vertex_count()) - static_cast<std::int64_t>(comps.size());
}

std::optional<int> recognize_torus(const Graph& g) {
  const int n = g.vertex_count();
  const int b = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (b < 3 || b * b != n) return std::nullopt;
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      const Vertex v = i * b + j;
      std::vector<Vertex> want{((i + 1) % b) * b + j, ((i + b - 1) % b) * b + j, i * b + (j + 1) % b,
                               i * b + (j + b - 1) % b};
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      const auto nb = g.neighbors(v);
      if (!std::equal(nb.begin(), nb.end(), want.begin(), want.end())) return std::nullopt;
    }
  }
  return b;
}

Partition partition_path_like(const Graph& g, double eps) {
  check_eps(eps);
  if (!is_path_like(g)) throw InvalidInput("path partitioner needs a disjoint union of paths and cycles");
  const int K = ceil_div_eps(2.0, eps);
  std::vector<Edge> cut;
  for (const auto& comp : connected_components(g)) {
    const int size = static_cast<int>(comp.size());
    if (size <= K) continue;
    // walk order: start at an end (paths) or the smallest vertex (cycles)
    Vertex start = comp.front();
    bool cycle = true;
    for (Vertex v : comp) {
      if (g.degree(v) < 2) {
        start = v;
        cycle = false;
        break;
      }
    }
    std::vector<Vertex> walk{start};
    Vertex prev = -1;
    Vertex cur = start;
    while (static_cast<int>(walk.size()) < size) {
      Vertex next = -1;
      for (Vertex w : g.neighbors(cur)) {
        if (w != prev && (walk.size() < 2 || w != walk.front())) {
          next = w;
          break;
        }
      }
      prev = cur;
      cur = next;
      walk.push_back(cur);
    }
    for (int i = K; i < size; i += K) cut.push_back(ordered(walk[i - 1], walk[i]));
    if (cycle) cut.push_back(ordered(walk.back(), walk.front()));
  }
  return make_partition(g, std::move(cut), K, "path");
}

Partition partition_torus(const Graph& g, double eps) {
  check_eps(eps);
  const auto side = recognize_torus(g);
  if (!side) throw InvalidInput("torus partitioner needs a b x b torus grid in row-major labels");
  const int b = *side;
  const int s = ceil_div_eps(4.0, eps);
  std::vector<Edge> cut;
  if (s < b) {
    auto block = [s](int c) { return c / s; };
    for (int i = 0; i < b; ++i) {
      for (int j = 0; j < b; ++j) {
        const Vertex v = i * b + j;
        const int jr = (j + 1) % b;
        const int id = (i + 1) % b;
        if (block(j) != block(jr)) cut.push_back(ordered(v, i * b + jr));
        if (block(i) != block(id)) cut.push_back(ordered(v, id * b + j));
      }
    }
  }
  const int k = std::min(s, b);
  return make_partition(g, std::move(cut), k * k, "torus");
}

Partition partition_tree(const Graph& g, double eps) {
  check_eps(eps);
  if (!is_forest(g)) throw InvalidInput("tree partitioner needs a forest");
  const int s = ceil_div_eps(2.0, eps);
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> acc(static_cast<std::size_t>(n), 1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Edge> cut;
  for (const auto& comp : connected_components(g)) {
    const Vertex root = comp.front();
    std::vector<Vertex> order{root};
    seen[root] = 1;
    for (std::size_t h = 0; h < order.size(); ++h) {
      for (Vertex w : g.neighbors(order[h])) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[h];
          order.push_back(w);
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const Vertex v = order[i];
      if (acc[v] >= s) {
        cut.push_back(ordered(v, parent[v]));
      } else {
        acc[parent[v]] += acc[v];
      }
    }
  }
  const int bound = std::min(n, 1 + g.degree_bound() * (s - 1));
  return make_partition(g, std::move(cut), std::max(bound, 1), "tree");
}

Partition partition_ball_carving(const Graph& g, const CarveOptions& options) {
  check_eps(options.eps);
  if (options.max_component < 0) throw InvalidInput("max_component must be nonnegative");
  const int n = g.vertex_count();
  const int cap = options.max_component > 0 ? options.max_component : std::max(n, 1);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[v] = v;
  Rng rng(options.seed);
  rng.shuffle(order);

  std::vector<char> assigned(static_cast<std::size_t>(n), 0);
  std::vector<int> mark(static_cast<std::size_t>(n), -1);  // ball id currently growing
  std::vector<Edge> cut;
  int ball_id = 0;
  for (Vertex start : order) {
    if (assigned[start]) continue;
    ++ball_id;
    std::vector<Vertex> members{start};
    mark[start] = ball_id;
    std::int64_t interior = 0;
    std::size_t layer_begin = 0;
    while (true) {
      std::int64_t boundary = 0;
      for (Vertex v : members) {
        for (Vertex w : g.neighbors(v)) {
          if (!assigned[w] && mark[w] != ball_id) ++boundary;
        }
      }
      if (boundary == 0 || static_cast<double>(boundary) <= options.eps * static_cast<double>(interior)) break;
      // next BFS layer within unassigned vertices
      std::vector<Vertex> next;
      for (std::size_t i = layer_begin; i < members.size(); ++i) {
        for (Vertex w : g.neighbors(members[i])) {
          if (!assigned[w] && mark[w] != ball_id) {
            mark[w] = ball_id;
            next.push_back(w);
          }
        }
      }
      if (members.size() + next.size() > static_cast<std::size_t>(cap)) {
        for (Vertex w : next) mark[w] = -1;
        break;
      }
      layer_begin = members.size();
      members.insert(members.end(), next.begin(), next.end());
      interior = 0;
      for (Vertex v : members) {
        for (Vertex w : g.neighbors(v)) {
          if (v < w && mark[w] == ball_id) ++interior;
        }
      }
    }
    for (Vertex v : members) assigned[v] = 1;
    for (Vertex v : members) {
      for (Vertex w : g.neighbors(v)) {
        if (!assigned[w]) cut.push_back(ordered(v, w));
      }
    }
  }
  Partition p = make_partition(g, std::move(cut), 0, "carve", options.canonical_limit);
  p.size_bound = std::max(p.max_component_size(), 1);
  return p;
}

Partition partition_auto(const Graph& g, double eps, std::uint64_t seed) {
  if (is_path_like(g)) return partition_path_like(g, eps);
  if (recognize_torus(g)) return partition_torus(g, eps);
  if (is_forest(g)) return partition_tree(g, eps);
  CarveOptions options;
  options.eps = eps;
  options.seed = seed;
  return partition_ball_carving(g, options);
}

std::vector<Vertex> exceptional_vertices(const Partition& p) {
  std::set<Vertex> out;
  for (const auto& [u, v] : p.cut_edges) {
    out.insert(u);
    out.insert(v);
  }
  return {out.begin(), out.end()};
}

double equipartition_compare(const Partition& pa, const Partition& pb) {
  if (pa.size_bound != pb.size_bound) throw InvalidInput("partitions have different size bounds K");
  if (pa.degree_bound != pb.degree_bound) throw InvalidInput("partitions have different degree bounds");
  std::set<CanonicalBallKey> keys;
  for (const auto& [k, c] : pa.class_vertices) keys.insert(k);
  for (const auto& [k, c] : pb.class_vertices) keys.insert(k);
  double total = 0.0;
  for (const auto& k : keys) total += std::abs((pa.c(k) - pb.c(k)).to_double());
  return total;
}

}  // namespace graphlim
