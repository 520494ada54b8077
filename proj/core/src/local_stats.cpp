#include "graphlim/local_stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

#include "graphlim/errors.hpp"
#include "graphlim/parallel.hpp"

namespace graphlim {

Rational StatVector::p(const CanonicalBallKey& alpha) const {
  if (alpha.radius < 0 || alpha.radius > r_max) return Rational(0);
  return Rational(count_at(alpha.radius, alpha), vertex_count);
}

std::int64_t StatVector::count_at(int radius, const CanonicalBallKey& alpha) const {
  if (radius < 0 || radius >= static_cast<int>(per_radius.size())) return 0;
  const auto& m = per_radius[static_cast<std::size_t>(radius)];
  const auto it = m.find(alpha);
  return it == m.end() ? 0 : it->second;
}

std::vector<std::pair<CanonicalBallKey, Rational>> StatVector::classes() const {
  std::vector<std::pair<CanonicalBallKey, Rational>> out;
  for (int s = 0; s < static_cast<int>(per_radius.size()); ++s) {
    for (const auto& [key, count] : per_radius[s]) {
      if (key.radius == s) out.emplace_back(key, Rational(count, vertex_count));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

// Keys for ball(g, x, s), s = 0..r. Balls that are identical as local
// adjacency patterns (BFS order, neighbors ascending) share one
// canonicalization through `cache`.
void census_vertex(const Graph& g, Vertex x, int r, int limit,
                   std::unordered_map<std::string, CanonicalBallKey>& cache,
                   std::vector<CanonicalBallKey>& out) {
  static thread_local std::vector<int> local_of;
  if (local_of.size() < static_cast<std::size_t>(g.vertex_count())) {
    local_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  }
  std::vector<Vertex> order{x};
  std::vector<int> dist{0};
  local_of[x] = 0;
  std::vector<std::size_t> layer_end;  // layer_end[s] = #vertices with dist <= s
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (dist[head] == r) continue;
    for (Vertex w : g.neighbors(order[head])) {
      if (local_of[w] < 0) {
        local_of[w] = static_cast<int>(order.size());
        order.push_back(w);
        dist.push_back(dist[head] + 1);
      }
    }
  }
  layer_end.assign(static_cast<std::size_t>(r) + 1, order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int s = 0; s < dist[i]; ++s) layer_end[s] = std::min(layer_end[s], i);
  }
  out.clear();
  std::size_t previous_size = 0;
  for (int s = 0; s <= r; ++s) {
    const std::size_t m = layer_end[s];
    if (s > 0 && m == previous_size) {
      out.push_back(out.back());
      continue;
    }
    previous_size = m;
    detail::LocalGraph lg;
    lg.n = static_cast<int>(m);
    lg.nbr.resize(m);
    std::string pattern;
    pattern.reserve(m * 4);
    for (std::size_t i = 0; i < m; ++i) {
      for (Vertex w : g.neighbors(order[i])) {
        const int j = local_of[w];
        if (j >= 0 && static_cast<std::size_t>(j) < m) lg.nbr[i].push_back(j);
      }
      pattern.push_back(static_cast<char>(lg.nbr[i].size()));
      for (int j : lg.nbr[i]) {
        pattern.push_back(static_cast<char>(j & 0xff));
        pattern.push_back(static_cast<char>((j >> 8) & 0xff));
      }
    }
    auto it = cache.find(pattern);
    if (it == cache.end()) {
      if (lg.n > limit) {
        for (Vertex v : order) local_of[v] = -1;
        throw LimitExceeded("ball of radius " + std::to_string(s) + " around vertex " +
                            std::to_string(x) + " has " + std::to_string(lg.n) +
                            " vertices, above the canonicalization limit " + std::to_string(limit));
      }
      it = cache.emplace(std::move(pattern), detail::canonical_form_local(lg, limit).key).first;
    }
    out.push_back(it->second);
  }
  for (Vertex v : order) local_of[v] = -1;
}

}  // namespace

StatVector class_census(const Graph& g, int r, int canonical_limit) {
  if (g.empty()) throw InvalidInput("class census of the empty graph is undefined");
  if (r < 0) throw InvalidInput("census radius must be nonnegative");
  StatVector sv;
  sv.r_max = r;
  sv.vertex_count = g.vertex_count();
  sv.degree_bound = g.degree_bound();
  sv.per_radius.resize(static_cast<std::size_t>(r) + 1);
  std::mutex merge_mutex;
  parallel_for_chunks(static_cast<std::size_t>(g.vertex_count()), [&](std::size_t begin, std::size_t end) {
    std::unordered_map<std::string, CanonicalBallKey> cache;
    std::vector<std::map<CanonicalBallKey, std::int64_t>> local(sv.per_radius.size());
    std::vector<CanonicalBallKey> keys;
    for (std::size_t x = begin; x < end; ++x) {
      census_vertex(g, static_cast<Vertex>(x), r, canonical_limit, cache, keys);
      for (int s = 0; s <= r; ++s) ++local[s][keys[s]];
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (int s = 0; s <= r; ++s) {
      for (const auto& [k, c] : local[s]) sv.per_radius[s][k] += c;
    }
  });
  return sv;
}

std::vector<CanonicalBallKey> vertex_ball_keys(const Graph& g, int r, int canonical_limit) {
  if (r < 0) throw InvalidInput("ball radius must be nonnegative");
  std::vector<CanonicalBallKey> out(static_cast<std::size_t>(g.vertex_count()));
  parallel_for_chunks(out.size(), [&](std::size_t begin, std::size_t end) {
    std::unordered_map<std::string, CanonicalBallKey> cache;
    std::vector<CanonicalBallKey> keys;
    for (std::size_t x = begin; x < end; ++x) {
      census_vertex(g, static_cast<Vertex>(x), r, canonical_limit, cache, keys);
      out[x] = keys.back();
    }
  });
  return out;
}

DPiValue d_pi(const StatVector& a, const StatVector& b) {
  if (a.r_max != b.r_max) throw InvalidInput("d_pi needs statistics computed to the same radius");
  if (a.degree_bound != b.degree_bound) throw InvalidInput("d_pi needs equal degree bounds");
  const auto ca = a.classes();
  const auto cb = b.classes();
  // merge the two sorted class lists
  std::vector<std::pair<double, double>> values;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ca.size() || j < cb.size()) {
    if (j == cb.size() || (i < ca.size() && ca[i].first < cb[j].first)) {
      values.emplace_back(ca[i++].second.to_double(), 0.0);
    } else if (i == ca.size() || cb[j].first < ca[i].first) {
      values.emplace_back(0.0, cb[j++].second.to_double());
    } else {
      values.emplace_back(ca[i++].second.to_double(), cb[j++].second.to_double());
    }
  }
  DPiValue out;
  double weight = 1.0;
  for (const auto& [pa, pb] : values) {
    weight *= 0.5;
    const double diff = std::abs(pa - pb);
    out.value += weight * diff / (1.0 + diff);
  }
  out.classes_compared = values.size();
  out.truncation_bound = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(values.size(), 1000)));
  return out;
}

WeakCauchyProfile weak_cauchy_profile(std::span<const Graph> seq, int r_max, double stable_tolerance,
                                      int canonical_limit) {
  if (seq.size() < 2) throw InvalidInput("a Cauchy profile needs at least two graphs");
  for (const auto& g : seq) {
    if (g.degree_bound() != seq.front().degree_bound()) {
      throw InvalidInput("all graphs in a sequence must share one degree bound");
    }
  }
  WeakCauchyProfile out;
  out.r_max = r_max;
  for (const auto& g : seq) {
    out.sizes.push_back(g.vertex_count());
    out.stats.push_back(class_census(g, r_max, canonical_limit));
  }
  const std::size_t len = seq.size();
  const bool all_pairs = len <= 32;
  std::vector<std::vector<double>> dist(len, std::vector<double>(len, -1.0));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (all_pairs || j == i + 1 || j == len - 1) dist[i][j] = d_pi(out.stats[i], out.stats[j]).value;
    }
  }
  for (std::size_t i = 0; i + 1 < len; ++i) out.consecutive.push_back(dist[i][i + 1]);
  out.tail_sup.assign(len - 1, 0.0);
  for (std::size_t m = len - 1; m-- > 0;) {
    double best = m + 1 < len - 1 ? out.tail_sup[m + 1] : 0.0;
    for (std::size_t j = m + 1; j < len; ++j) best = std::max(best, dist[m][j]);
    out.tail_sup[m] = best;
  }
  const std::size_t tail_begin = len / 2;
  for (const auto& [key, freq] : out.stats.back().classes()) {
    LimitFrequency lf;
    lf.key = key;
    lf.last = freq.to_double();
    double lo = lf.last;
    double hi = lf.last;
    for (std::size_t i = tail_begin; i < len; ++i) {
      const double p = out.stats[i].p(key).to_double();
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    lf.spread = hi - lo;
    lf.stable = lf.spread <= stable_tolerance;
    out.limit_frequencies.push_back(std::move(lf));
  }
  return out;
}

}  // namespace graphlim
