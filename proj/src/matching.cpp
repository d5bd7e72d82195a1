#include "polyspec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace polyspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_equal_sizes(const Spectrum& s, const Spectrum& t) {
  if (s.values.size() != t.values.size())
    throw SizeMismatch("matching requires spectra of equal size");
  if (s.values.empty()) throw SizeMismatch("matching requires nonempty spectra");
}

std::vector<std::vector<double>> pairwise_costs(const Spectrum& s, const Spectrum& t) {
  const size_t k = s.values.size();
  std::vector<std::vector<double>> cost(k, std::vector<double>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) cost[i][j] = std::abs(s.values[i] - t.values[j]);
  return cost;
}

// Hopcroft-Karp maximum matching restricted to edges with cost <= limit.
// Returns true iff a perfect matching exists; match_lr then holds it.
bool perfect_matching_under(const std::vector<std::vector<double>>& cost, double limit,
                            std::vector<int>& match_lr) {
  const int k = static_cast<int>(cost.size());
  std::vector<int> match_rl(k, -1);
  match_lr.assign(k, -1);
  std::vector<int> dist(k);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable_free = false;
    for (int u = 0; u < k; ++u) {
      if (match_lr[u] == -1) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = -1;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < k; ++v) {
        if (cost[u][v] > limit) continue;
        const int w = match_rl[v];
        if (w == -1) {
          reachable_free = true;
        } else if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int v = 0; v < k; ++v) {
      if (cost[u][v] > limit) continue;
      const int w = match_rl[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_lr[u] = v;
        match_rl[v] = u;
        return true;
      }
    }
    dist[u] = -1;
    return false;
  };

  int matched = 0;
  while (bfs()) {
    for (int u = 0; u < k; ++u)
      if (match_lr[u] == -1 && dfs(u)) ++matched;
  }
  return matched == k;
}

}  // namespace

MatchingResult optimal_matching_distance(const Spectrum& s, const Spectrum& t) {
  require_equal_sizes(s, t);
  const auto cost = pairwise_costs(s, t);
  const size_t k = s.values.size();

  std::vector<double> values;
  values.reserve(k * k);
  for (const auto& row : cost) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Smallest threshold admitting a perfect matching; feasibility is
  // monotone in the threshold and always true at the largest cost.
  std::vector<int> match;
  size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (perfect_matching_under(cost, values[mid], match))
      hi = mid;
    else
      lo = mid + 1;
  }
  perfect_matching_under(cost, values[lo], match);

  MatchingResult out;
  out.method = MatchMethod::bottleneck;
  out.permutation = std::move(match);
  out.distance = values[lo];
  return out;
}

MatchingResult frobenius_matching_distance(const Spectrum& s, const Spectrum& t) {
  require_equal_sizes(s, t);
  const int k = static_cast<int>(s.values.size());
  std::vector<std::vector<double>> cost(k, std::vector<double>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) cost[i][j] = std::norm(s.values[i] - t.values[j]);

  // Shortest augmenting path assignment with potentials (1-based workspace).
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  MatchingResult out;
  out.method = MatchMethod::sum_of_squares;
  out.permutation.assign(k, -1);
  for (int j = 1; j <= k; ++j)
    if (p[j] != 0) out.permutation[p[j] - 1] = j - 1;
  out.distance = matching_objective(s, t, out.permutation, out.method);
  return out;
}

MatchingResult brute_force_matching(const Spectrum& s, const Spectrum& t,
                                    MatchMethod method) {
  require_equal_sizes(s, t);
  const size_t k = s.values.size();
  if (k > 8) throw OracleSizeExceeded("brute force matching is limited to k <= 8");

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  MatchingResult best;
  best.method = method;
  best.distance = kInf;
  do {
    const double obj = matching_objective(s, t, perm, method);
    if (obj < best.distance) {
      best.distance = obj;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double matching_objective(const Spectrum& s, const Spectrum& t,
                          const std::vector<int>& permutation, MatchMethod method) {
  require_equal_sizes(s, t);
  if (permutation.size() != s.values.size())
    throw SizeMismatch("permutation size does not match spectra");
  if (method == MatchMethod::bottleneck) {
    double worst = 0.0;
    for (size_t i = 0; i < permutation.size(); ++i)
      worst = std::max(worst, std::abs(s.values[i] - t.values[permutation[i]]));
    return worst;
  }
  double sum = 0.0;
  for (size_t i = 0; i < permutation.size(); ++i)
    sum += std::norm(s.values[i] - t.values[permutation[i]]);
  return std::sqrt(sum);
}

}  // namespace polyspec
