#include "graphlim/inertia.hpp"

#include <algorithm>
#include <cmath>

#include "graphlim/errors.hpp"

namespace graphlim {

std::vector<int> reverse_cuthill_mckee(const SymMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, v] : m.row(i)) {
      if (j != i) adj[i].push_back(j);
    }
  }
  auto degree = [&](int v) { return adj[v].size(); };
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end(), [&](int a, int b) { return degree(a) != degree(b) ? degree(a) < degree(b) : a < b; });
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> level(static_cast<std::size_t>(n), -1);

  // BFS returning the last vertex of the deepest level (a pseudo-peripheral
  // candidate) and the depth
  auto farthest = [&](int start, std::vector<int>& comp) {
    comp.assign(1, start);
    level[start] = 0;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int w : adj[comp[head]]) {
        if (level[w] < 0) {
          level[w] = level[comp[head]] + 1;
          comp.push_back(w);
        }
      }
    }
    int depth = level[comp.back()];
    int best = comp.back();
    for (int v : comp) {
      if (level[v] == depth && degree(v) < degree(best)) best = v;
      level[v] = -1;
    }
    return std::pair<int, int>(best, depth);
  };

  std::vector<int> comp;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int start = s;
    auto [candidate, depth] = farthest(start, comp);
    for (int iter = 0; iter < 8; ++iter) {
      auto [next, next_depth] = farthest(candidate, comp);
      if (next_depth <= depth) break;
      start = candidate;
      candidate = next;
      depth = next_depth;
    }
    start = candidate;
    const std::size_t begin = order.size();
    order.push_back(start);
    seen[start] = 1;
    for (std::size_t head = begin; head < order.size(); ++head) {
      for (int w : adj[order[head]]) {
        if (!seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

InertiaCounter::InertiaCounter(const SymMatrix& m) : n_(m.size()) {
  const std::vector<int> order = reverse_cuthill_mckee(m);
  std::vector<int> position(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) position[order[k]] = k;
  for (int i = 0; i < n_; ++i) {
    for (const auto& [j, v] : m.row(i)) band_ = std::max(band_, std::abs(position[i] - position[j]));
  }
  scale_ = std::max(1.0, m.max_row_abs_sum());
  const std::size_t width = static_cast<std::size_t>(band_) + 1;
  a_.assign(static_cast<std::size_t>(n_) * width, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (const auto& [j, v] : m.row(i)) {
      const int pi = position[i];
      const int pj = position[j];
      if (pj > pi) continue;
      a_[static_cast<std::size_t>(pi) * width + static_cast<std::size_t>(pj - pi + band_)] = v;
    }
  }
}

namespace {

__extension__ using Quad = __float128;

// Signs of the LDL^T pivots of (band matrix - sigma I) in precision T.
// Returns -1 when a pivot falls below `tiny`, since rounding growth from
// smaller pivots can flip later signs.
template <class T>
std::int64_t banded_negatives(const std::vector<double>& a, int n, int b, double sigma, double tiny) {
  const std::size_t width = static_cast<std::size_t>(b) + 1;
  std::vector<T> l(a.size(), T(0));  // same layout; diagonal slot holds d_i
  auto at = [&](int i, int j) -> T& { return l[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j - i + b)]; };
  const T shift = static_cast<T>(sigma);
  const T floor = static_cast<T>(tiny);
  std::int64_t negatives = 0;
  for (int j = 0; j < n; ++j) {
    const int lo = std::max(0, j - b);
    for (int k = lo; k < j; ++k) {
      T s = static_cast<T>(a[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(k - j + b)]);
      const int lo2 = std::max(lo, k - b);
      for (int t = lo2; t < k; ++t) s -= at(j, t) * at(k, t) * at(t, t);
      at(j, k) = s / at(k, k);
    }
    T d = static_cast<T>(a[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(b)]) - shift;
    for (int t = lo; t < j; ++t) d -= at(j, t) * at(j, t) * at(t, t);
    if ((d < T(0) ? -d : d) < floor) return -1;
    at(j, j) = d;
    if (d < T(0)) ++negatives;
  }
  return negatives;
}

}  // namespace

std::int64_t InertiaCounter::try_count(double sigma) const {
  const std::int64_t fast = banded_negatives<double>(a_, n_, band_, sigma, 1e-7 * scale_);
  if (fast >= 0) return fast;
  return banded_negatives<Quad>(a_, n_, band_, sigma, 1e-15 * scale_);
}

std::int64_t InertiaCounter::count_below(double sigma) const {
  if (n_ == 0) return 0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double shift = attempt == 0 ? sigma : sigma - 1e-13 * scale_ * std::ldexp(1.0, attempt - 1);
    const std::int64_t c = try_count(shift);
    if (c >= 0) return c;
  }
  throw InvariantViolation("inertia factorization broke down at every perturbed shift near " +
                           std::to_string(sigma));
}

}  // namespace graphlim
