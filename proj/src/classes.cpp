#include "sst/classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

namespace sst {

SstVerdict is_sst(const ProbabilityMatrix& m, double tol) {
  const int n = m.size();
  std::vector<double> row_sum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) row_sum[i] += m(i, j);

  std::vector<int> order(n);  // order[r] = item at rank r
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (row_sum[a] != row_sum[b]) return row_sum[a] > row_sum[b];
    return a < b;
  });

  SstVerdict v;
  for (int r = 0; r + 1 < n; ++r) {
    const int i = order[r];
    const int j = order[r + 1];
    for (int k = 0; k < n; ++k) {
      if (m(i, k) < m(j, k) - tol) {
        v.member = false;
        v.i = i;
        v.j = j;
        v.k = k;
        return v;
      }
    }
  }
  std::vector<int> ranks(n);
  for (int r = 0; r < n; ++r) ranks[order[r]] = r;
  v.member = true;
  v.order = Permutation::from_ranks(std::move(ranks));
  return v;
}

TripleVerdict is_mst(const ProbabilityMatrix& m, double tol) {
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (m(i, j) >= 0.5 && m(j, k) >= 0.5 &&
            m(i, k) < std::min(m(i, j), m(j, k)) - tol) {
          return {false, i, j, k};
        }
      }
  return {true, -1, -1, -1};
}

TripleVerdict is_wst(const ProbabilityMatrix& m, double tol) {
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (m(i, j) >= 0.5 && m(j, k) >= 0.5 && m(i, k) < 0.5 - tol) {
          return {false, i, j, k};
        }
      }
  return {true, -1, -1, -1};
}

QuadVerdict parametric_necessary_check(const ProbabilityMatrix& m, double slack) {
  const int n = m.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        for (int d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (m(a, b) > m(c, d) + slack && m(a, c) < m(b, d) - slack) {
            return {false, a, b, c, d};
          }
        }
      }
    }
  return {true, -1, -1, -1, -1};
}

PairVerdict is_high_snr(const ProbabilityMatrix& m, double gamma, double tol) {
  if (!is_sst(m, tol).member) return {false, -1, -1};
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::max(m(i, j), m(j, i)) < 0.5 + gamma - tol) return {false, i, j};
    }
  return {true, -1, -1};
}

FullRefutation full_class_refuter(const ProbabilityMatrix& m, double tol) {
  const auto sst = is_sst(m, tol);
  if (!sst.member) return FullRefutation::unknown;
  const Permutation& pi = *sst.order;
  const int n = m.size();

  const auto is_half = [&](int a, int b) { return std::abs(m(a, b) - 0.5) <= tol; };
  const auto is_one = [&](int a, int b) { return std::abs(m(a, b) - 1.0) <= tol; };

  // One node per unordered half-valued pair.
  std::vector<int> pair_id(static_cast<std::size_t>(n) * n, -1);
  int next_id = 0;
  const auto node = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    int& id = pair_id[static_cast<std::size_t>(a) * n + b];
    if (id == -1) id = next_id++;
    return id;
  };

  std::vector<std::pair<int, int>> edges;
  for (int ri = 0; ri < n; ++ri)
    for (int rj = ri + 1; rj < n; ++rj)
      for (int rk = rj + 1; rk < n; ++rk) {
        const int i = pi.item_at(ri), j = pi.item_at(rj), k = pi.item_at(rk);
        if (is_half(i, j) && is_half(j, k) && is_one(i, k)) {
          edges.emplace_back(node(i, j), node(j, k));
        }
      }

  // Bipartiteness check of the "must differ" graph.
  std::vector<std::vector<int>> adj(next_id);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> color(next_id, -1);
  for (int s = 0; s < next_id; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          q.push(w);
        } else if (color[w] == color[u]) {
          return FullRefutation::refuted;
        }
      }
    }
  }
  return FullRefutation::unknown;
}

}  // namespace sst
