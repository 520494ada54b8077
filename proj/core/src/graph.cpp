#include "graphlim/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "graphlim/errors.hpp"

namespace graphlim {

Graph::Graph(int n, std::span<const Edge> edges, int degree_bound)
    : adj_(static_cast<std::size_t>(std::max(n, 0))), degree_bound_(degree_bound) {
  if (n < 0) throw InvalidInput("vertex count must be nonnegative");
  if (degree_bound < 1) throw InvalidInput("degree bound must be a positive integer");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw InvalidInput("edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (u == v) throw InvalidInput("loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw InvalidInput("multiple edge at vertex " + std::to_string(v));
    }
    if (static_cast<int>(nb.size()) > degree_bound) {
      throw InvalidInput("vertex " + std::to_string(v) + " has degree " +
                         std::to_string(nb.size()) + " above bound " +
                         std::to_string(degree_bound));
    }
  }
  edge_count_ = static_cast<std::int64_t>(edges.size());
}

Graph Graph::edgeless(int n, int degree_bound) { return Graph(n, {}, degree_bound); }

int Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return static_cast<int>(best);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& nb = adj_[check(u)];
  check(v);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::with_degree_bound(int degree_bound) const {
  const auto e = edges();
  return Graph(vertex_count(), e, degree_bound);
}

Vertex Graph::check(Vertex v) const {
  if (v < 0 || v >= vertex_count()) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range for graph with " +
                       std::to_string(vertex_count()) + " vertices");
  }
  return v;
}

VertexLabeling::VertexLabeling(std::vector<Vertex> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (Vertex v : image_) {
    if (v < 0 || v >= size() || seen[v]) throw InvalidInput("labeling is not a bijection");
    seen[v] = 1;
  }
}

VertexLabeling VertexLabeling::identity(int n) {
  std::vector<Vertex> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  return VertexLabeling(std::move(id));
}

VertexLabeling VertexLabeling::inverse() const {
  std::vector<Vertex> inv(image_.size());
  for (int v = 0; v < size(); ++v) inv[image_[v]] = v;
  return VertexLabeling(std::move(inv));
}

VertexLabeling VertexLabeling::then(const VertexLabeling& b) const {
  if (b.size() != size()) throw InvalidInput("labeling sizes differ");
  std::vector<Vertex> out(image_.size());
  for (int v = 0; v < size(); ++v) out[v] = b(image_[v]);
  return VertexLabeling(std::move(out));
}

Graph relabel(const Graph& g, const VertexLabeling& sigma) {
  if (sigma.size() != g.vertex_count()) throw InvalidInput("labeling size does not match graph");
  auto e = g.edges();
  for (auto& [u, v] : e) {
    u = sigma(u);
    v = sigma(v);
  }
  return Graph(g.vertex_count(), e, g.degree_bound());
}

std::vector<int> distances_from(const Graph& g, Vertex x) {
  g.check(x);
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kInfiniteDistance);
  std::deque<Vertex> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kInfiniteDistance) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int path_distance(const Graph& g, Vertex x, Vertex y) {
  g.check(x);
  g.check(y);
  if (x == y) return 0;
  return distances_from(g, x)[y];
}

int eccentricity(const Graph& g, Vertex v) {
  int ecc = 0;
  for (int d : distances_from(g, v)) {
    if (d != kInfiniteDistance) ecc = std::max(ecc, d);
  }
  return ecc;
}

RootedGraph induced_subgraph(const Graph& g, std::span<const Vertex> t) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Vertex v = g.check(t[i]);
    if (local[v] != -1) throw InvalidInput("duplicate vertex " + std::to_string(v) + " in subset");
    local[v] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (Vertex w : g.neighbors(t[i])) {
      const int j = local[w];
      if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  RootedGraph out;
  out.graph = Graph(static_cast<int>(t.size()), edges, g.degree_bound());
  out.root = 0;
  out.origin.assign(t.begin(), t.end());
  return out;
}

RootedGraph ball(const Graph& g, Vertex x, int r) {
  g.check(x);
  if (r < 0) throw InvalidInput("ball radius must be nonnegative");
  std::vector<Vertex> order{x};
  std::vector<int> dist_local;  // parallel to order
  dist_local.push_back(0);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  seen[x] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (dist_local[head] == r) continue;
    for (Vertex w : g.neighbors(order[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
        dist_local.push_back(dist_local[head] + 1);
      }
    }
  }
  return induced_subgraph(g, order);
}

Graph disjoint_multiple(const Graph& g, int q) {
  if (q < 1) throw InvalidInput("multiple must be a positive integer");
  const int n = g.vertex_count();
  const auto base = g.edges();
  std::vector<Edge> edges;
  edges.reserve(base.size() * static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    for (const auto& [u, v] : base) edges.emplace_back(u + i * n, v + i * n);
  }
  return Graph(n * q, edges, g.degree_bound());
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  if (g.degree_bound() != h.degree_bound()) throw InvalidInput("degree bounds differ");
  auto edges = g.edges();
  const int shift = g.vertex_count();
  for (const auto& [u, v] : h.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph(g.vertex_count() + h.vertex_count(), edges, g.degree_bound());
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : g.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Graph remove_edges(const Graph& g, std::span<const Edge> cut) {
  std::vector<Edge> cut_sorted;
  cut_sorted.reserve(cut.size());
  for (auto [u, v] : cut) {
    if (!g.has_edge(u, v)) {
      throw InvalidInput("cut edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} is not an edge");
    }
    cut_sorted.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(cut_sorted.begin(), cut_sorted.end());
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(cut_sorted.begin(), cut_sorted.end(), e)) kept.push_back(e);
  }
  return Graph(g.vertex_count(), kept, g.degree_bound());
}

}  // namespace graphlim
