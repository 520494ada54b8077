#include "graphlim/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "graphlim/errors.hpp"

namespace graphlim {
namespace {

using detail::LocalGraph;

// Upper bound on stored automorphism generators. Dropping generators only
// weakens pruning, never correctness.
constexpr std::size_t kMaxGenerators = 256;

// Replace colors by dense ranks of (color, sorted neighbor colors) until the
// number of classes stops growing. The primary sort key is the old color, so
// the ordering of existing cells is preserved and the result depends only on
// the isomorphism type of (graph, coloring).
int refine(const LocalGraph& g, std::vector<int>& color) {
  const int n = g.n;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
  int classes = 0;
  {
    std::vector<int> tmp(color);
    std::sort(tmp.begin(), tmp.end());
    classes = static_cast<int>(std::unique(tmp.begin(), tmp.end()) - tmp.begin());
  }
  while (classes < n) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(color[v]);
      for (int w : g.nbr[v]) s.push_back(color[w]);
      std::sort(s.begin() + 1, s.end());
    }
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++rank;
      color[idx[i]] = rank;
    }
    const int next = rank + 1;
    if (next == classes) break;
    classes = next;
  }
  return classes;
}

// Dense re-ranking after splitting v off the front of its cell.
std::vector<int> individualize(const std::vector<int>& color, int v) {
  const int n = static_cast<int>(color.size());
  std::vector<long long> key(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) key[u] = 2LL * color[u] + (u == v ? 0 : 1);
  std::vector<long long> sorted(key);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    out[u] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key[u]) - sorted.begin());
  }
  return out;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

class Search {
 public:
  Search(const LocalGraph& g) : g_(g), words_((g.n + 63) / 64) {
    bits_.assign(static_cast<std::size_t>(g.n) * words_, 0);
    for (int v = 0; v < g.n; ++v) {
      for (int w : g.nbr[v]) bits_[v * words_ + w / 64] |= (std::uint64_t{1} << (w % 64));
    }
  }

  std::vector<int> run(std::vector<int> color) {
    std::vector<int> path;
    descend(std::move(color), path);
    return best_order_;
  }

 private:
  bool adjacent(int u, int v) const { return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U; }

  // Row-major adjacency of the graph in `order`, one bit row per position.
  std::vector<std::uint64_t> certificate(const std::vector<int>& order) const {
    const int n = g_.n;
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::uint64_t> cert(static_cast<std::size_t>(n) * words_, 0);
    for (int i = 0; i < n; ++i) {
      for (int w : g_.nbr[order[i]]) {
        const int j = pos[w];
        cert[i * words_ + (n - 1 - j) / 64] |= std::uint64_t{1} << ((n - 1 - j) % 64);
      }
    }
    // Word order within a row is reversed so lexicographic comparison of the
    // vector matches comparison of the bit string (position 0 most significant).
    for (int i = 0; i < n; ++i) std::reverse(cert.begin() + i * words_, cert.begin() + (i + 1) * words_);
    return cert;
  }

  void add_generator(const std::vector<int>& from, const std::vector<int>& to) {
    if (generators_.size() >= kMaxGenerators) return;
    std::vector<int> gamma(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) gamma[from[i]] = to[i];
    generators_.push_back(std::move(gamma));
  }

  // Returns the level the search should resume at. A value below the
  // caller's level aborts the caller's remaining children.
  int descend(std::vector<int> color, std::vector<int>& path) {
    const int level = static_cast<int>(path.size());
    const int classes = refine(g_, color);
    const int n = g_.n;
    if (classes == n) {
      std::vector<int> order(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) order[color[v]] = v;
      return leaf(order, path);
    }
    int target = -1;
    {
      std::vector<int> count(static_cast<std::size_t>(n), 0);
      for (int v = 0; v < n; ++v) ++count[color[v]];
      for (int c = 0; c < n; ++c) {
        if (count[c] > 1) {
          target = c;
          break;
        }
      }
    }
    std::vector<int> cell;
    for (int v = 0; v < n; ++v) {
      if (color[v] == target) cell.push_back(v);
    }
    std::vector<int> tried;
    for (int v : cell) {
      if (!tried.empty() && same_orbit_as_tried(v, tried, path)) continue;
      tried.push_back(v);
      path.push_back(v);
      const int resume = descend(individualize(color, v), path);
      path.pop_back();
      if (resume < level) return resume;
    }
    return level;
  }

  bool same_orbit_as_tried(int v, const std::vector<int>& tried, const std::vector<int>& path) const {
    std::vector<int> parent(static_cast<std::size_t>(g_.n));
    std::iota(parent.begin(), parent.end(), 0);
    bool any = false;
    for (const auto& gamma : generators_) {
      if (!std::all_of(path.begin(), path.end(), [&](int p) { return gamma[p] == p; })) continue;
      any = true;
      for (int u = 0; u < g_.n; ++u) {
        const int a = find_root(parent, u);
        const int b = find_root(parent, gamma[u]);
        if (a != b) parent[a] = b;
      }
    }
    if (!any) return false;
    const int rv = find_root(parent, v);
    return std::any_of(tried.begin(), tried.end(), [&](int u) { return find_root(parent, u) == rv; });
  }

  int leaf(const std::vector<int>& order, const std::vector<int>& path) {
    auto cert = certificate(order);
    const int level = static_cast<int>(path.size());
    if (first_order_.empty()) {
      first_order_ = order;
      first_cert_ = cert;
      first_path_ = path;
      best_order_ = order;
      best_cert_ = std::move(cert);
      return level;
    }
    if (cert == first_cert_) {
      add_generator(first_order_, order);
      int common = 0;
      while (common < level && common < static_cast<int>(first_path_.size()) &&
             path[common] == first_path_[common]) {
        ++common;
      }
      return common;
    }
    if (cert == best_cert_) {
      add_generator(best_order_, order);
      return level;
    }
    if (cert < best_cert_) {
      best_order_ = order;
      best_cert_ = std::move(cert);
    }
    return level;
  }

  const LocalGraph& g_;
  int words_;
  std::vector<std::uint64_t> bits_;
  std::vector<int> first_order_;
  std::vector<std::uint64_t> first_cert_;
  std::vector<int> first_path_;
  std::vector<int> best_order_;
  std::vector<std::uint64_t> best_cert_;
  std::vector<std::vector<int>> generators_;
};

std::vector<int> ranks_of(const std::vector<long long>& key) {
  std::vector<long long> sorted(key);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key[i]) - sorted.begin());
  }
  return out;
}

std::vector<int> bfs_distances(const LocalGraph& g, int root) {
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<int> queue{root};
  dist[root] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int w : g.nbr[queue[h]]) {
      if (dist[w] < 0) {
        dist[w] = dist[queue[h]] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::string pack_bytes(const LocalGraph& g, const std::vector<int>& order) {
  const int n = g.n;
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::string out;
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  std::string bits((pairs + 7) / 8, '\0');
  // bit index of pair (i,j), i<j, in row-major upper-triangle order
  auto index = [n](int i, int j) {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n - i - 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
  };
  for (int v = 0; v < n; ++v) {
    for (int w : g.nbr[v]) {
      int i = pos[v];
      int j = pos[w];
      if (i >= j) continue;
      const std::size_t b = index(i, j);
      bits[b / 8] = static_cast<char>(static_cast<unsigned char>(bits[b / 8]) | (0x80U >> (b % 8)));
    }
  }
  out += bits;
  return out;
}

LocalGraph to_local(const Graph& g) {
  LocalGraph lg;
  lg.n = g.vertex_count();
  lg.nbr.resize(static_cast<std::size_t>(lg.n));
  for (int v = 0; v < lg.n; ++v) {
    const auto nb = g.neighbors(v);
    lg.nbr[v].assign(nb.begin(), nb.end());
  }
  return lg;
}

CanonicalForm rooted_form(const LocalGraph& g, int root, int max_vertices) {
  if (g.n > max_vertices) {
    throw LimitExceeded("rooted graph has " + std::to_string(g.n) +
                        " vertices, above the canonicalization limit " + std::to_string(max_vertices));
  }
  if (g.n > 65535) throw LimitExceeded("canonical keys support at most 65535 vertices");
  const auto dist = bfs_distances(g, root);
  int radius = 0;
  std::vector<long long> key(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v) {
    if (dist[v] < 0) throw InvalidInput("rooted graph is not connected from its root");
    radius = std::max(radius, dist[v]);
    key[v] = static_cast<long long>(dist[v]) * (g.n + 1) + static_cast<long long>(g.nbr[v].size());
  }
  Search search(g);
  CanonicalForm out;
  out.order = search.run(ranks_of(key));
  out.key.radius = radius;
  out.key.size = g.n;
  out.key.bytes = pack_bytes(g, out.order);
  return out;
}

}  // namespace

namespace detail {

CanonicalForm canonical_form_local(const LocalGraph& g, int max_vertices) {
  return rooted_form(g, 0, max_vertices);
}

}  // namespace detail

CanonicalForm canonical_form(const Graph& g, Vertex root, int max_vertices) {
  g.check(root);
  return rooted_form(to_local(g), root, max_vertices);
}

CanonicalBallKey canonical_key(const RootedGraph& b, int max_vertices) {
  return canonical_form(b.graph, b.root, max_vertices).key;
}

CanonicalForm canonical_form_unrooted(const Graph& g, int max_vertices) {
  if (g.vertex_count() > max_vertices) {
    throw LimitExceeded("graph has " + std::to_string(g.vertex_count()) +
                        " vertices, above the canonicalization limit " + std::to_string(max_vertices));
  }
  if (g.vertex_count() > 65535) throw LimitExceeded("canonical keys support at most 65535 vertices");
  const LocalGraph lg = to_local(g);
  std::vector<long long> key(static_cast<std::size_t>(lg.n));
  for (int v = 0; v < lg.n; ++v) key[v] = static_cast<long long>(lg.nbr[v].size());
  CanonicalForm out;
  if (lg.n == 0) {
    out.key = CanonicalBallKey{-1, 0, std::string(2, '\0')};
    return out;
  }
  Search search(lg);
  out.order = search.run(ranks_of(key));
  out.key.radius = -1;
  out.key.size = lg.n;
  out.key.bytes = pack_bytes(lg, out.order);
  return out;
}

std::vector<Vertex> root_fixing_orbits(const Graph& g, Vertex root, int max_vertices) {
  g.check(root);
  if (g.vertex_count() > max_vertices) throw LimitExceeded("graph above canonicalization limit");
  const LocalGraph lg = to_local(g);
  const int n = lg.n;
  // u and v share an orbit iff (root, u) and (root, v) individualized give
  // the same canonical adjacency; u always lands at canonical position 1.
  std::vector<std::string> forms(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    if (u == root) continue;
    std::vector<long long> key(static_cast<std::size_t>(n), 2);
    key[root] = 0;
    key[u] = 1;
    Search search(lg);
    forms[u] = pack_bytes(lg, search.run(ranks_of(key)));
  }
  std::vector<Vertex> orbit(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    orbit[v] = v;
    if (v == root) continue;
    for (int u = 0; u < v; ++u) {
      if (u != root && forms[u] == forms[v]) {
        orbit[v] = orbit[u];
        break;
      }
    }
  }
  return orbit;
}

std::string CanonicalBallKey::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 + 2 * bytes.size());
  const unsigned r = rooted() ? static_cast<unsigned>(radius) & 0xffU : 0xffU;
  out.push_back(kDigits[r >> 4]);
  out.push_back(kDigits[r & 15U]);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15U]);
  }
  return out;
}

CanonicalBallKey CanonicalBallKey::from_hex(const std::string& hex) {
  auto nibble = [&](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw InvalidInput("invalid hex digit in canonical key '" + hex + "'");
  };
  if (hex.size() < 6 || hex.size() % 2 != 0) throw InvalidInput("malformed canonical key '" + hex + "'");
  std::string raw;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    raw.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  }
  CanonicalBallKey key;
  const auto r = static_cast<unsigned char>(raw[0]);
  key.radius = r == 0xff ? -1 : static_cast<int>(r);
  key.bytes = raw.substr(1);
  key.size = (static_cast<unsigned char>(key.bytes[0]) << 8) | static_cast<unsigned char>(key.bytes[1]);
  const std::size_t n = static_cast<std::size_t>(key.size);
  const std::size_t pairs = n * (n > 0 ? n - 1 : 0) / 2;
  if (key.bytes.size() != 2 + (pairs + 7) / 8) throw InvalidInput("canonical key length does not match its vertex count");
  return key;
}

Graph CanonicalBallKey::representative(int degree_bound) const {
  const int n = size;
  std::vector<Edge> edges;
  std::size_t b = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++b) {
      if (static_cast<unsigned char>(bytes[2 + b / 8]) & (0x80U >> (b % 8))) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges, degree_bound);
}

}  // namespace graphlim
