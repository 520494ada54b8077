#include "graphlim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "graphlim/errors.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/random.hpp"

namespace graphlim {

std::string to_string(StarComparison mode) {
  return mode == StarComparison::induced ? "induced" : "incident";
}

StarComparison parse_star_comparison(const std::string& text) {
  if (text == "induced") return StarComparison::induced;
  if (text == "incident") return StarComparison::incident;
  throw InvalidInput("unknown star comparison '" + text + "' (expected induced or incident)");
}

std::string to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::exact:
      return "exact";
    case EstimateKind::upper_bound:
      return "upper-bound";
    case EstimateKind::lower_bound:
      return "lower-bound";
  }
  return "unknown";
}

StarFingerprint star_fingerprint(const Graph& g, Vertex v, StarComparison mode) {
  StarFingerprint fp;
  const auto nbrs = g.neighbors(v);
  fp.vertices.assign(nbrs.begin(), nbrs.end());
  fp.vertices.insert(std::lower_bound(fp.vertices.begin(), fp.vertices.end(), v), v);
  for (Vertex a : fp.vertices) {
    for (Vertex b : g.neighbors(a)) {
      if (a >= b || !std::binary_search(fp.vertices.begin(), fp.vertices.end(), b)) continue;
      if (mode == StarComparison::incident && a != v && b != v) continue;
      fp.edges.emplace_back(a, b);
    }
  }
  return fp;
}

namespace {

void check_pair(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) {
    throw InvalidInput("star distance needs equal vertex counts (" + std::to_string(g.vertex_count()) +
                       " vs " + std::to_string(h.vertex_count()) + ")");
  }
  if (g.degree_bound() != h.degree_bound()) throw InvalidInput("star distance needs equal degree bounds");
}

// Whether the star of v in g equals the star of v in relabel(h, pi^-1),
// i.e. g-vertex a is matched with h-vertex pi[a].
bool star_matches(const Graph& g, const Graph& h, const std::vector<Vertex>& pi, Vertex v, StarComparison mode) {
  const auto nbrs = g.neighbors(v);
  if (static_cast<int>(nbrs.size()) != h.degree(pi[v])) return false;
  for (Vertex a : nbrs) {
    if (!h.has_edge(pi[v], pi[a])) return false;
  }
  if (mode == StarComparison::induced) {
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (g.has_edge(nbrs[i], nbrs[j]) != h.has_edge(pi[nbrs[i]], pi[nbrs[j]])) return false;
      }
    }
  }
  return true;
}

VertexLabeling witness_from_matching(const std::vector<Vertex>& pi) {
  std::vector<Vertex> sigma(pi.size());
  for (std::size_t v = 0; v < pi.size(); ++v) sigma[static_cast<std::size_t>(pi[v])] = static_cast<Vertex>(v);
  return VertexLabeling(std::move(sigma));
}

DistanceEstimate trivial_estimate(const Graph& g, const Graph& h) {
  DistanceEstimate e;
  e.kind = EstimateKind::exact;
  e.value = g.empty() && h.empty() ? 0.0 : 1.0;
  if (g.empty() && h.empty()) e.permutation = VertexLabeling::identity(0);
  return e;
}

// ---- heuristic ----

class Matcher {
 public:
  Matcher(const Graph& g, const Graph& h, StarComparison mode)
      : g_(g), h_(h), mode_(mode), n_(g.vertex_count()) {
    gkeys_ = vertex_ball_keys(g, 1);
    hkeys_ = vertex_ball_keys(h, 1);
    refine_colors();
  }

  std::vector<Vertex> greedy(const std::vector<Vertex>& start_order) const {
    std::map<int, std::set<Vertex>> by_color;
    std::map<CanonicalBallKey, std::set<Vertex>> by_key;
    std::map<int, std::set<Vertex>> by_degree;
    std::set<Vertex> free_all;
    for (Vertex x = 0; x < n_; ++x) {
      by_color[hcolor_[x]].insert(x);
      by_key[hkeys_[x]].insert(x);
      by_degree[h_.degree(x)].insert(x);
      free_all.insert(x);
    }
    std::vector<Vertex> pi(static_cast<std::size_t>(n_), -1);
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    auto take = [&](Vertex v, Vertex x) {
      pi[v] = x;
      used[x] = 1;
      by_color[hcolor_[x]].erase(x);
      by_key[hkeys_[x]].erase(x);
      by_degree[h_.degree(x)].erase(x);
      free_all.erase(x);
    };
    auto pick_free = [&](Vertex v) {
      if (auto it = by_color.find(gcolor_[v]); it != by_color.end() && !it->second.empty()) {
        return *it->second.begin();
      }
      if (auto it = by_key.find(gkeys_[v]); it != by_key.end() && !it->second.empty()) return *it->second.begin();
      if (auto it = by_degree.find(g_.degree(v)); it != by_degree.end() && !it->second.empty()) {
        return *it->second.begin();
      }
      return *free_all.begin();
    };
    std::vector<Vertex> queue;
    for (Vertex s : start_order) {
      if (pi[s] >= 0) continue;
      take(s, pick_free(s));
      queue.assign(1, s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (Vertex w : g_.neighbors(u)) {
          if (pi[w] >= 0) continue;
          Vertex best = -1;
          int best_score = -1;
          for (Vertex x : h_.neighbors(pi[u])) {
            if (used[x]) continue;
            int score = hcolor_[x] == gcolor_[w] ? 2000 : 0;
            if (hkeys_[x] == gkeys_[w]) score += 1000;
            if (h_.degree(x) == g_.degree(w)) score += 100;
            for (Vertex a : g_.neighbors(w)) {
              if (pi[a] >= 0 && h_.has_edge(x, pi[a])) ++score;
            }
            if (score > best_score) {
              best_score = score;
              best = x;
            }
          }
          take(w, best >= 0 ? best : pick_free(w));
          queue.push_back(w);
        }
      }
    }
    return pi;
  }

  int cost(const std::vector<Vertex>& pi, std::vector<char>& broken) const {
    broken.assign(static_cast<std::size_t>(n_), 0);
    int count = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (!star_matches(g_, h_, pi, v, mode_)) {
        broken[v] = 1;
        ++count;
      }
    }
    return count;
  }

  // First-improvement transposition search; returns the final cost.
  int improve(std::vector<Vertex>& pi, Rng& rng) const {
    std::vector<char> broken;
    int current = cost(pi, broken);
    std::vector<Vertex> affected;
    auto affected_count = [&](Vertex u, Vertex w) {
      affected.clear();
      for (Vertex x : {u, w}) {
        affected.push_back(x);
        for (Vertex y : g_.neighbors(x)) affected.push_back(y);
      }
      std::sort(affected.begin(), affected.end());
      affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
      int c = 0;
      for (Vertex v : affected) c += star_matches(g_, h_, pi, v, mode_) ? 0 : 1;
      return c;
    };
    for (int pass = 0; pass < 30 && current > 0; ++pass) {
      std::vector<Vertex> first;
      std::vector<Vertex> second;
      if (n_ <= 64) {
        first.resize(static_cast<std::size_t>(n_));
        std::iota(first.begin(), first.end(), 0);
        second = first;
      } else {
        std::vector<Vertex> inverse(static_cast<std::size_t>(n_));
        for (Vertex v = 0; v < n_; ++v) inverse[pi[v]] = v;
        std::vector<char> in_first(static_cast<std::size_t>(n_), 0);
        std::vector<char> in_second(static_cast<std::size_t>(n_), 0);
        for (Vertex b = 0; b < n_; ++b) {
          if (!broken[b]) continue;
          in_first[b] = 1;
          for (Vertex y : g_.neighbors(b)) in_first[y] = 1;
          in_second[inverse[pi[b]]] = 1;
          for (Vertex x : h_.neighbors(pi[b])) in_second[inverse[x]] = 1;
        }
        for (Vertex v = 0; v < n_; ++v) {
          if (in_first[v]) first.push_back(v);
          if (in_first[v] || in_second[v]) second.push_back(v);
        }
        constexpr std::size_t kCap = 400;
        if (first.size() > kCap) {
          rng.shuffle(first);
          first.resize(kCap);
        }
        if (second.size() > kCap) {
          rng.shuffle(second);
          second.resize(kCap);
        }
      }
      bool improved = false;
      for (Vertex u : first) {
        for (Vertex w : second) {
          if (u == w) continue;
          const int before = affected_count(u, w);
          std::swap(pi[u], pi[w]);
          const int after = affected_count(u, w);
          if (after < before) {
            current -= before - after;
            improved = true;
          } else {
            std::swap(pi[u], pi[w]);
          }
        }
      }
      if (!improved) break;
      current = cost(pi, broken);
    }
    return current;
  }

  std::vector<Vertex> default_order() const {
    std::vector<Vertex> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::map<int, int> frequency;
    for (Vertex v = 0; v < n_; ++v) ++frequency[gcolor_[v]];
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return frequency[gcolor_[a]] < frequency[gcolor_[b]];
    });
    return order;
  }

 private:
  // Joint color refinement of g and h with a shared signature dictionary, so
  // equal colors across the two graphs mean equal refined neighborhoods.
  void refine_colors() {
    std::map<CanonicalBallKey, int> initial;
    for (const auto* keys : {&gkeys_, &hkeys_}) {
      for (const auto& k : *keys) initial.emplace(k, static_cast<int>(initial.size()));
    }
    gcolor_.resize(static_cast<std::size_t>(n_));
    hcolor_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      gcolor_[v] = initial.at(gkeys_[v]);
      hcolor_[v] = initial.at(hkeys_[v]);
    }
    std::size_t classes = initial.size();
    for (int round = 0; round < 16; ++round) {
      std::map<std::vector<int>, int> dictionary;
      auto step = [&](const Graph& graph, const std::vector<int>& color) {
        std::vector<int> next(color.size());
        std::vector<int> signature;
        for (Vertex v = 0; v < n_; ++v) {
          signature.assign(1, color[v]);
          for (Vertex y : graph.neighbors(v)) signature.push_back(color[y]);
          std::sort(signature.begin() + 1, signature.end());
          next[v] = dictionary.emplace(signature, static_cast<int>(dictionary.size())).first->second;
        }
        return next;
      };
      auto gnext = step(g_, gcolor_);
      auto hnext = step(h_, hcolor_);
      gcolor_ = std::move(gnext);
      hcolor_ = std::move(hnext);
      if (dictionary.size() == classes) break;
      classes = dictionary.size();
    }
  }

  const Graph& g_;
  const Graph& h_;
  StarComparison mode_;
  int n_;
  std::vector<CanonicalBallKey> gkeys_;
  std::vector<CanonicalBallKey> hkeys_;
  std::vector<int> gcolor_;
  std::vector<int> hcolor_;
};

// ---- exact ----

class ExactSearch {
 public:
  ExactSearch(const Graph& g, const Graph& h, StarComparison mode) : mode_(mode), n_(g.vertex_count()) {
    gadj_.assign(static_cast<std::size_t>(n_), 0);
    hadj_.assign(static_cast<std::size_t>(n_), 0);
    gdeg_.resize(static_cast<std::size_t>(n_));
    hdeg_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) gadj_[v] |= std::uint64_t{1} << w;
      for (Vertex w : h.neighbors(v)) hadj_[v] |= std::uint64_t{1} << w;
      gdeg_[v] = g.degree(v);
      hdeg_[v] = h.degree(v);
    }
    // BFS order so closed neighborhoods complete early
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (Vertex s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      const std::size_t begin = order_.size();
      order_.push_back(s);
      for (std::size_t head = begin; head < order_.size(); ++head) {
        for (Vertex w : g.neighbors(order_[head])) {
          if (!seen[w]) {
            seen[w] = 1;
            order_.push_back(w);
          }
        }
      }
    }
  }

  // Searches with the first ordered vertex fixed to `first_image`, pruning
  // against the shared best count.
  void run(Vertex first_image, std::atomic<int>& best, std::mutex& mu, std::vector<Vertex>& best_pi) {
    State st(n_, gdeg_, hdeg_);
    descend(st, 0, first_image, best, mu, best_pi);
  }

 private:
  struct State {
    std::vector<Vertex> pi;
    std::vector<char> used;
    std::vector<char> broken;
    std::vector<int> g_left;  // unassigned g vertices by degree
    std::vector<int> h_left;
    int broken_count = 0;
    int unassigned_broken = 0;
    std::vector<Vertex> trail;

    State(int n, const std::vector<int>& gdeg, const std::vector<int>& hdeg)
        : pi(static_cast<std::size_t>(n), -1), used(static_cast<std::size_t>(n), 0),
          broken(static_cast<std::size_t>(n), 0) {
      int top = 0;
      for (int x : gdeg) top = std::max(top, x);
      for (int x : hdeg) top = std::max(top, x);
      g_left.assign(static_cast<std::size_t>(top) + 1, 0);
      h_left.assign(static_cast<std::size_t>(top) + 1, 0);
      for (int x : gdeg) ++g_left[x];
      for (int x : hdeg) ++h_left[x];
    }

    void mark(Vertex v) {
      if (broken[v]) return;
      broken[v] = 1;
      trail.push_back(v);
      ++broken_count;
      if (pi[v] < 0) ++unassigned_broken;
    }
  };

  void descend(State& st, int level, Vertex only, std::atomic<int>& best, std::mutex& mu,
               std::vector<Vertex>& best_pi) {
    if (level == n_) {
      if (st.broken_count < best.load()) {
        std::lock_guard<std::mutex> lock(mu);
        if (st.broken_count < best.load()) {
          best.store(st.broken_count);
          best_pi = st.pi;
        }
      }
      return;
    }
    const Vertex u = order_[level];
    for (Vertex x = 0; x < n_; ++x) {
      if (st.used[x] || (only >= 0 && x != only)) continue;
      const std::size_t trail_mark = st.trail.size();
      const bool was_broken = st.broken[u] != 0;
      st.pi[u] = x;
      st.used[x] = 1;
      if (was_broken) --st.unassigned_broken;
      --st.g_left[gdeg_[u]];
      --st.h_left[hdeg_[x]];
      if (gdeg_[u] != hdeg_[x]) st.mark(u);
      for (int k = 0; k < level; ++k) {
        const Vertex a = order_[k];
        const bool ge = (gadj_[u] >> a) & 1U;
        const bool he = (hadj_[x] >> st.pi[a]) & 1U;
        if (ge == he) continue;
        st.mark(u);
        st.mark(a);
        if (mode_ == StarComparison::induced) {
          for (std::uint64_t common = gadj_[u] & gadj_[a]; common != 0; common &= common - 1) {
            st.mark(static_cast<Vertex>(std::countr_zero(common)));
          }
        }
      }
      int excess = 0;
      for (std::size_t k = 0; k < st.g_left.size(); ++k) excess += std::max(0, st.g_left[k] - st.h_left[k]);
      const int bound = st.broken_count + std::max(0, excess - st.unassigned_broken);
      if (bound < best.load()) descend(st, level + 1, -1, best, mu, best_pi);
      // undo
      while (st.trail.size() > trail_mark) {
        const Vertex v = st.trail.back();
        st.trail.pop_back();
        st.broken[v] = 0;
        --st.broken_count;
        if (st.pi[v] < 0) --st.unassigned_broken;
      }
      ++st.g_left[gdeg_[u]];
      ++st.h_left[hdeg_[x]];
      st.pi[u] = -1;
      st.used[x] = 0;
      if (was_broken) ++st.unassigned_broken;
    }
  }

  StarComparison mode_;
  int n_;
  std::vector<std::uint64_t> gadj_;
  std::vector<std::uint64_t> hadj_;
  std::vector<int> gdeg_;
  std::vector<int> hdeg_;
  std::vector<Vertex> order_;
};

}  // namespace

double delta(const Graph& g, const Graph& h, StarComparison mode) {
  if (g.empty() || h.empty()) return g.empty() && h.empty() ? 0.0 : 1.0;
  check_pair(g, h);
  int differing = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (star_fingerprint(g, v, mode) != star_fingerprint(h, v, mode)) ++differing;
  }
  return static_cast<double>(differing) / g.vertex_count();
}

DistanceEstimate delta_s_heuristic(const Graph& g, const Graph& h, const DeltaSOptions& options) {
  if (g.empty() || h.empty()) return trivial_estimate(g, h);
  check_pair(g, h);
  const int n = g.vertex_count();
  int restarts = options.restarts;
  if (restarts <= 0) restarts = n <= 12 ? 24 : (n <= 200 ? 4 : 1);
  const Matcher matcher(g, h, options.comparison);
  std::vector<Vertex> order = matcher.default_order();
  Rng rng(options.seed);
  std::vector<Vertex> best_pi;
  int best_cost = n + 1;
  for (int r = 0; r < restarts && best_cost > 0; ++r) {
    if (r > 0) rng.shuffle(order);
    std::vector<Vertex> pi = matcher.greedy(order);
    Rng local(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    const int c = matcher.improve(pi, local);
    if (c < best_cost) {
      best_cost = c;
      best_pi = std::move(pi);
    }
  }
  DistanceEstimate e;
  e.value = static_cast<double>(best_cost) / n;
  e.kind = best_cost == 0 ? EstimateKind::exact : EstimateKind::upper_bound;
  e.permutation = witness_from_matching(best_pi);
  return e;
}

DistanceEstimate delta_s_exact(const Graph& g, const Graph& h, const DeltaSOptions& options) {
  if (g.empty() || h.empty()) return trivial_estimate(g, h);
  check_pair(g, h);
  const int n = g.vertex_count();
  if (n > options.exact_limit || n > 64) {
    throw LimitExceeded("exact star-distance search is limited to " + std::to_string(options.exact_limit) +
                        " vertices, got " + std::to_string(n));
  }
  DistanceEstimate start = delta_s_heuristic(g, h, options);
  DistanceEstimate e;
  e.kind = EstimateKind::exact;
  if (start.value == 0.0) {
    e.value = 0.0;
    e.permutation = start.permutation;
    return e;
  }
  std::vector<Vertex> best_pi(static_cast<std::size_t>(n));
  for (Vertex x = 0; x < n; ++x) best_pi[(*start.permutation)(x)] = x;
  std::atomic<int> best{static_cast<int>(std::lround(start.value * n))};
  std::mutex mu;
  ExactSearch search(g, h, options.comparison);
  parallel_for_chunks(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      ExactSearch local = search;
      local.run(static_cast<Vertex>(x), best, mu, best_pi);
    }
  });
  e.value = static_cast<double>(best.load()) / n;
  e.permutation = witness_from_matching(best_pi);
  return e;
}

DistanceEstimate delta_s(const Graph& g, const Graph& h, SearchMode mode, const DeltaSOptions& options) {
  return mode == SearchMode::exact ? delta_s_exact(g, h, options) : delta_s_heuristic(g, h, options);
}

DistanceEstimate delta_rho(const Graph& g, const Graph& h, const DeltaRhoOptions& options) {
  if (g.empty() || h.empty()) return trivial_estimate(g, h);
  if (g.degree_bound() != h.degree_bound()) throw InvalidInput("geometric distance needs equal degree bounds");
  if (options.multiple_cap < 1) throw InvalidInput("multiple cap must be positive");
  const std::int64_t ng = g.vertex_count();
  const std::int64_t nh = h.vertex_count();
  const std::int64_t common = std::gcd(ng, nh);
  const std::int64_t q0 = nh / common;
  const std::int64_t p0 = ng / common;
  DistanceEstimate best;
  best.value = 1.0;
  best.kind = EstimateKind::upper_bound;
  for (int k = 1; k <= options.multiple_cap; ++k) {
    const std::int64_t q = k * q0;
    const std::int64_t p = k * p0;
    const std::int64_t size = q * ng;
    if (size > options.max_vertices) break;
    const Graph gq = disjoint_multiple(g, static_cast<int>(q));
    const Graph hp = disjoint_multiple(h, static_cast<int>(p));
    const bool exact = size <= options.delta_s.exact_limit;
    DistanceEstimate e = exact ? delta_s_exact(gq, hp, options.delta_s) : delta_s_heuristic(gq, hp, options.delta_s);
    best.trials.push_back({static_cast<int>(q), static_cast<int>(p), static_cast<int>(size), e.value, e.kind});
    if (!best.q || e.value < best.value) {
      best.value = e.value;
      best.permutation = std::move(e.permutation);
      best.q = static_cast<int>(q);
      best.p = static_cast<int>(p);
    }
    if (best.value == 0.0) break;
  }
  return best;
}

PartitionBound delta_rho_partition_bound(const Partition& pg, const Partition& ph, double eps) {
  if (pg.size_bound != ph.size_bound) {
    throw InvalidInput("partition bound needs equal component size bounds (" + std::to_string(pg.size_bound) +
                       " vs " + std::to_string(ph.size_bound) + ")");
  }
  if (pg.degree_bound != ph.degree_bound) throw InvalidInput("partition bound needs equal degree bounds");
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidInput("edge-removal fraction must lie in [0, 1]");
  for (const Partition* p : {&pg, &ph}) {
    if (p->cut_fraction().to_double() > eps + 1e-12) {
      throw InvalidInput("partition cuts " + p->cut_fraction().str() + " of its edges, more than eps");
    }
  }
  PartitionBound out;
  out.size_bound = pg.size_bound;
  out.degree_bound = pg.degree_bound;
  out.eps = eps;
  std::set<CanonicalBallKey> classes;
  for (const auto& [key, count] : pg.class_components) classes.insert(key);
  for (const auto& [key, count] : ph.class_components) classes.insert(key);
  for (const auto& key : classes) {
    if (key.size <= pg.size_bound) ++out.class_count;
    out.beta = std::max(out.beta, std::abs((pg.gamma(key) - ph.gamma(key)).to_double()));
  }
  const double raw = 4.0 * pg.degree_bound * eps + 2.0 * out.class_count * pg.size_bound * out.beta;
  out.value = std::clamp(raw, 0.0, 1.0);
  return out;
}

double delta_rho_upper_from_partitions(const Partition& pg, const Partition& ph, double eps) {
  return delta_rho_partition_bound(pg, ph, eps).value;
}

StrongCauchyProfile strong_cauchy_profile(std::span<const Graph> seq, const DeltaRhoOptions& options,
                                          std::span<const Partition> partitions, double eps) {
  if (seq.size() < 2) throw InvalidInput("a Cauchy profile needs at least two graphs");
  if (!partitions.empty() && partitions.size() != seq.size()) {
    throw InvalidInput("one partition per sequence member is required");
  }
  for (const auto& g : seq) {
    if (g.degree_bound() != seq.front().degree_bound()) {
      throw InvalidInput("all graphs in a sequence must share one degree bound");
    }
  }
  StrongCauchyProfile out;
  for (const auto& g : seq) out.sizes.push_back(g.vertex_count());
  const std::size_t len = seq.size();
  const bool all_pairs = len <= 12;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (!all_pairs && j != i + 1 && j != len - 1) continue;
      StrongPair pr;
      pr.i = static_cast<int>(i);
      pr.j = static_cast<int>(j);
      pr.direct = delta_rho(seq[i], seq[j], options).value;
      pr.best = pr.direct;
      if (!partitions.empty()) {
        pr.partition = delta_rho_upper_from_partitions(partitions[i], partitions[j], eps);
        pr.best = std::min(pr.best, *pr.partition);
      }
      out.pairs.push_back(pr);
    }
  }
  out.tail_sup.assign(len - 1, 0.0);
  for (const auto& pr : out.pairs) {
    for (int m = 0; m <= pr.i; ++m) out.tail_sup[m] = std::max(out.tail_sup[m], pr.best);
  }
  return out;
}

}  // namespace graphlim
