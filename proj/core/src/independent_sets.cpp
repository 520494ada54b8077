#include "graphlim/independent_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

constexpr WideCount kMax = ~WideCount{0};

WideCount checked_add(WideCount a, WideCount b) {
  if (a > kMax - b) throw LimitExceeded("independent set count exceeds 128 bits");
  return a + b;
}

WideCount checked_mul(WideCount a, WideCount b) {
  if (a != 0 && b > kMax / a) throw LimitExceeded("independent set count exceeds 128 bits");
  return a * b;
}

// Independent sets of the path on n vertices: Fib(n+2).
WideCount path_count(std::int64_t n) {
  WideCount empty_last = 1;  // sets avoiding the last vertex
  WideCount full_last = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const WideCount next_empty = checked_add(empty_last, full_last);
    full_last = empty_last;
    empty_last = next_empty;
  }
  return checked_add(empty_last, full_last);
}

// Independent sets of the cycle on n >= 3 vertices: P_{n-1} + P_{n-3}
// (first vertex unused, or used with both ring neighbors excluded).
WideCount cycle_count(std::int64_t n) { return checked_add(path_count(n - 1), path_count(n - 3)); }

class Brancher {
 public:
  explicit Brancher(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

  WideCount count(std::uint64_t mask) {
    if (mask == 0) return 1;
    if (const auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const std::uint64_t comp = component_of(mask);
    WideCount result;
    if (comp != mask) {
      result = checked_mul(count(comp), count(mask & ~comp));
    } else {
      int best = -1;
      int best_degree = -1;
      int degree_sum = 0;
      for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        const int v = std::countr_zero(m);
        const int d = std::popcount(adj_[v] & mask);
        degree_sum += d;
        if (d > best_degree) {
          best_degree = d;
          best = v;
        }
      }
      const int k = std::popcount(mask);
      if (best_degree <= 2) {
        result = degree_sum / 2 == k - 1 ? path_count(k) : cycle_count(k);
      } else {
        const std::uint64_t bit = std::uint64_t{1} << best;
        result = checked_add(count(mask & ~bit), count(mask & ~(bit | adj_[best])));
      }
    }
    if (memo_.size() < (1U << 20)) memo_.emplace(mask, result);
    return result;
  }

 private:
  std::uint64_t component_of(std::uint64_t mask) const {
    std::uint64_t seen = mask & (~mask + 1);
    std::uint64_t frontier = seen;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t m = frontier; m != 0; m &= m - 1) next |= adj_[std::countr_zero(m)];
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  std::vector<std::uint64_t> adj_;
  std::unordered_map<std::uint64_t, WideCount> memo_;
};

struct ComponentShape {
  std::int64_t size = 0;
  std::int64_t edges = 0;
  int max_degree = 0;
};

ComponentShape shape_of(const Graph& g, const std::vector<Vertex>& comp) {
  ComponentShape s;
  s.size = static_cast<std::int64_t>(comp.size());
  for (Vertex v : comp) {
    s.edges += g.degree(v);
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  s.edges /= 2;
  return s;
}

WideCount count_component(const Graph& g, const std::vector<Vertex>& comp) {
  const ComponentShape s = shape_of(g, comp);
  if (s.max_degree <= 2) return s.edges == s.size - 1 ? path_count(s.size) : cycle_count(s.size);
  if (s.size > kExactIndependentSetLimit) {
    throw LimitExceeded("exact independent set counting is limited to components of " +
                        std::to_string(kExactIndependentSetLimit) + " vertices, got " + std::to_string(s.size));
  }
  std::vector<std::uint64_t> adj(comp.size(), 0);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    for (Vertex w : g.neighbors(comp[i])) {
      const auto j = std::lower_bound(comp.begin(), comp.end(), w) - comp.begin();
      adj[i] |= std::uint64_t{1} << j;
    }
  }
  Brancher b(std::move(adj));
  const std::uint64_t all = comp.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << comp.size()) - 1;
  return b.count(all);
}

double log2_wide(WideCount x) { return std::log2(static_cast<long double>(x)); }

}  // namespace

WideCount count_independent_sets(const Graph& g) {
  WideCount total = 1;
  for (const auto& comp : connected_components(g)) total = checked_mul(total, count_component(g, comp));
  return total;
}

double log2_independent_sets_path(std::int64_t n) {
  if (n < 0) throw InvalidInput("path length must be nonnegative");
  double empty_last = 1.0;
  double full_last = 0.0;
  double scale = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double next_empty = empty_last + full_last;
    full_last = empty_last;
    empty_last = next_empty;
    const double total = empty_last + full_last;
    empty_last /= total;
    full_last /= total;
    scale += std::log2(total);
  }
  return scale + std::log2(empty_last + full_last);
}

double log2_independent_sets_cycle(std::int64_t n) {
  if (n < 3) throw InvalidInput("a cycle needs at least three vertices");
  // trace of T^n, T = [[1,1],[1,0]], with the product rescaled as it grows
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;  // identity
  double scale = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double na = a + b;
    const double nb = a;
    const double nc = c + d;
    const double nd = c;
    a = na;
    b = nb;
    c = nc;
    d = nd;
    const double m = std::max({a, b, c, d});
    a /= m;
    b /= m;
    c /= m;
    d /= m;
    scale += std::log2(m);
  }
  return scale + std::log2(a + d);
}

double log2_independent_sets(const Graph& g) {
  double total = 0.0;
  for (const auto& comp : connected_components(g)) {
    const ComponentShape s = shape_of(g, comp);
    if (s.max_degree <= 2 && s.size > 120) {
      total += s.edges == s.size - 1 ? log2_independent_sets_path(s.size) : log2_independent_sets_cycle(s.size);
    } else {
      total += log2_wide(count_component(g, comp));
    }
  }
  return total;
}

std::string to_string(WideCount x) {
  if (x == 0) return "0";
  std::string s;
  while (x != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace graphlim
