#include "biso_oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sst::testing {

namespace {

struct Poset {
  int count = 0;                       // free variables, row-major upper triangle
  std::vector<std::vector<bool>> leq;  // leq[a][b]: m_a <= m_b required
  std::vector<int> cell_of_pair;       // (i,j) -> variable id
};

Poset build_poset(int n) {
  Poset p;
  std::vector<std::pair<int, int>> cells;
  p.cell_of_pair.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p.cell_of_pair[static_cast<std::size_t>(i) * n + j] = static_cast<int>(cells.size());
      cells.emplace_back(i, j);
    }
  p.count = static_cast<int>(cells.size());
  p.leq.assign(p.count, std::vector<bool>(p.count, false));
  for (int a = 0; a < p.count; ++a)
    for (int b = 0; b < p.count; ++b) {
      const auto [ia, ja] = cells[a];
      const auto [ib, jb] = cells[b];
      // m[ib][jb] >= m[ia][ja] whenever ib <= ia and jb >= ja.
      p.leq[a][b] = (ib <= ia && jb >= ja);
    }
  return p;
}

// Max-min isotonic regression over the poset, then clip to [1/2, 1].
std::vector<double> solve(const Poset& p, const std::vector<double>& c) {
  const int m = p.count;
  if (m > 16) throw std::runtime_error("oracle is enumeration-based; n too large");
  const unsigned full = 1u << m;

  std::vector<double> mask_sum(full, 0.0);
  for (unsigned mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    mask_sum[mask] = mask_sum[mask & (mask - 1)] + c[low];
  }

  std::vector<unsigned> lower_sets, upper_sets;
  for (unsigned mask = 0; mask < full; ++mask) {
    bool lower = true, upper = true;
    for (int e = 0; e < m && (lower || upper); ++e) {
      if (!(mask >> e & 1u)) continue;
      for (int o = 0; o < m; ++o) {
        if (p.leq[o][e] && !(mask >> o & 1u)) lower = false;  // predecessor missing
        if (p.leq[e][o] && !(mask >> o & 1u)) upper = false;  // successor missing
      }
    }
    if (lower) lower_sets.push_back(mask);
    if (upper) upper_sets.push_back(mask);
  }

  std::vector<double> x(m);
  for (int e = 0; e < m; ++e) {
    double best_over_upper = -1e300;
    for (unsigned u : upper_sets) {
      if (!(u >> e & 1u)) continue;
      double worst = 1e300;
      for (unsigned l : lower_sets) {
        if (!(l >> e & 1u)) continue;
        const unsigned inter = u & l;
        const double avg = mask_sum[inter] / std::popcount(inter);
        worst = std::min(worst, avg);
      }
      best_over_upper = std::max(best_over_upper, worst);
    }
    x[e] = std::clamp(best_over_upper, 0.5, 1.0);
  }
  return x;
}

}  // namespace

Matrix biso_projection_oracle(const Matrix& y, const Permutation& pi) {
  const int n = y.size();
  const Matrix r = permute(y, pi);
  const Poset poset = build_poset(n);
  std::vector<double> c(poset.count);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c[poset.cell_of_pair[static_cast<std::size_t>(i) * n + j]] =
          0.5 * (r(i, j) + 1.0 - r(j, i));
    }
  const std::vector<double> x = solve(poset, c);
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      const double v = x[poset.cell_of_pair[static_cast<std::size_t>(i) * n + j]];
      out(i, j) = v;
      out(j, i) = 1.0 - v;
    }
  }
  return permute(out, pi.inverse());
}

double biso_objective_oracle(const Matrix& y, const Permutation& pi) {
  return frobenius_distance_sq(y, biso_projection_oracle(y, pi));
}

double lse_objective_oracle(const Matrix& y) {
  const int n = y.size();
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  double best = 1e300;
  do {
    best = std::min(best, biso_objective_oracle(y, Permutation::from_ranks(ranks)));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

}  // namespace sst::testing
