#include "sst/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sst/rng.hpp"

namespace sst {

void pava_nondecreasing(double* x, int n) {
  // Block merging with explicit (value, count) stack.
  std::vector<double> value(n);
  std::vector<int> count(n);
  int top = 0;
  for (int i = 0; i < n; ++i) {
    value[top] = x[i];
    count[top] = 1;
    ++top;
    while (top > 1 && value[top - 2] > value[top - 1]) {
      const double merged = (value[top - 2] * count[top - 2] + value[top - 1] * count[top - 1]) /
                            (count[top - 2] + count[top - 1]);
      count[top - 2] += count[top - 1];
      value[top - 2] = merged;
      --top;
    }
  }
  int pos = 0;
  for (int b = 0; b < top; ++b)
    for (int c = 0; c < count[b]; ++c) x[pos++] = value[b];
}

namespace {

void project_rows_nondecreasing(Matrix& m) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) pava_nondecreasing(m.data() + static_cast<std::size_t>(i) * n, n);
}

void project_cols_nonincreasing(Matrix& m) {
  const int n = m.size();
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    // Nonincreasing top-to-bottom == nondecreasing bottom-to-top.
    for (int i = 0; i < n; ++i) col[i] = m(n - 1 - i, j);
    pava_nondecreasing(col.data(), n);
    for (int i = 0; i < n; ++i) m(n - 1 - i, j) = col[i];
  }
}

void project_skew(Matrix& m) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + 1.0 - m(j, i));
      m(i, j) = v;
      m(j, i) = 1.0 - v;
    }
  }
}

void project_box(Matrix& m) {
  const int n = m.size();
  double* p = m.data();
  for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k) {
    p[k] = std::clamp(p[k], 0.0, 1.0);
  }
}

using Projector = void (*)(Matrix&);

}  // namespace

IsotonicResult bivariate_isotonic_project(const Matrix& y, const Permutation& pi,
                                          const IsotonicConfig& cfg) {
  if (cfg.tol <= 0.0 || cfg.max_iters < 1) {
    throw Error(Errc::InvalidConfig, "isotonic config needs tol > 0 and max_iters >= 1");
  }
  const int n = y.size();
  if (pi.size() != n) throw Error(Errc::SizeMismatch, "permutation size does not match matrix");

  Matrix x = permute(y, pi);  // rank space: target set is plain bivariate isotonic
  const Projector projectors[4] = {project_rows_nondecreasing, project_cols_nonincreasing,
                                   project_skew, project_box};
  std::vector<Matrix> corrections(4, Matrix(n, 0.0));

  bool converged = false;
  int iters = 0;
  Matrix prev(n);
  for (; iters < cfg.max_iters; ++iters) {
    prev = x;
    for (int s = 0; s < 4; ++s) {
      Matrix shifted = x;
      double* ps = shifted.data();
      const double* pc = corrections[s].data();
      for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k) ps[k] += pc[k];
      x = shifted;
      projectors[s](x);
      double* pcor = corrections[s].data();
      const double* pshift = shifted.data();
      const double* px = x.data();
      for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k) {
        pcor[k] = pshift[k] - px[k];
      }
    }
    if (std::sqrt(frobenius_distance_sq(x, prev)) < cfg.tol) {
      converged = true;
      ++iters;
      break;
    }
  }

  // The cycle ends on the box set; make skew and box hold exactly so the
  // result is a valid probability matrix regardless of where the loop stopped.
  project_skew(x);
  project_box(x);
  Matrix back = permute(x, pi.inverse());
  return {validate_probability_matrix(std::move(back), kLooseTol), converged, iters};
}

long long fas_disagreements(const ObservationMatrix& y, const Permutation& pi) {
  const int n = y.size();
  if (pi.size() != n) throw Error(Errc::SizeMismatch, "permutation size does not match matrix");
  long long d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!y.present(i, j)) continue;
      const bool i_above = pi.rank_of(i) < pi.rank_of(j);
      const int out = y.outcome(i, j);
      if ((i_above && out == 0) || (!i_above && out == 1)) ++d;
    }
  return d;
}

namespace {

Permutation row_sum_order(const ObservationMatrix& y) {
  const int n = y.size();
  std::vector<int> wins(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && y.present(i, j) && y.outcome(i, j) == 1) ++wins[i];
    }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (wins[a] != wins[b]) return wins[a] > wins[b];
    return a < b;
  });
  std::vector<int> ranks(n);
  for (int r = 0; r < n; ++r) ranks[order[r]] = r;
  return Permutation::from_ranks(std::move(ranks));
}

// Hill climbing over single-item relocations on an order array
// (order[r] = item); returns the reached disagreement count.
long long relocation_descent(const ObservationMatrix& y, std::vector<int>& order) {
  const int n = y.size();
  // above(a, b): cost of placing a above b.
  const auto cost = [&](int a, int b) -> int {
    if (!y.present(a, b)) return 0;
    return y.outcome(a, b) == 0 ? 1 : 0;
  };
  std::vector<int> ranks(n);
  for (int r = 0; r < n; ++r) ranks[order[r]] = r;
  long long current = fas_disagreements(y, Permutation::from_ranks(ranks));

  bool improved = true;
  while (improved) {
    improved = false;
    long long best_delta = 0;
    int best_p = -1, best_q = -1;
    for (int p = 0; p < n; ++p) {
      const int item = order[p];
      // Moving item to position q shifts the block between p and q by one;
      // the delta accumulates pair by pair while q walks away from p.
      long long delta = 0;
      for (int q = p - 1; q >= 0; --q) {
        const int other = order[q];
        delta += cost(item, other) - cost(other, item);
        if (delta < best_delta) {
          best_delta = delta;
          best_p = p;
          best_q = q;
        }
      }
      delta = 0;
      for (int q = p + 1; q < n; ++q) {
        const int other = order[q];
        delta += cost(other, item) - cost(item, other);
        if (delta < best_delta) {
          best_delta = delta;
          best_p = p;
          best_q = q;
        }
      }
    }
    if (best_p >= 0) {
      const int item = order[best_p];
      order.erase(order.begin() + best_p);
      order.insert(order.begin() + best_q, item);
      current += best_delta;
      improved = true;
    }
  }
  return current;
}

Permutation ranks_from_order(const std::vector<int>& order) {
  std::vector<int> ranks(order.size());
  for (int r = 0; r < static_cast<int>(order.size()); ++r) ranks[order[r]] = r;
  return Permutation::from_ranks(std::move(ranks));
}

}  // namespace

Permutation fas_permutation(const ObservationMatrix& y, const FasConfig& cfg) {
  const int n = y.size();
  switch (cfg.strategy) {
    case FasConfig::Strategy::exhaustive: {
      if (n > 10) {
        throw Error(Errc::NTooLargeForBruteForce, "exhaustive FAS refuses n > 10");
      }
      std::vector<int> ranks(n);
      std::iota(ranks.begin(), ranks.end(), 0);
      std::vector<int> best = ranks;
      long long best_d = fas_disagreements(y, Permutation::from_ranks(ranks));
      while (std::next_permutation(ranks.begin(), ranks.end())) {
        const long long d = fas_disagreements(y, Permutation::from_ranks(ranks));
        if (d < best_d) {
          best_d = d;
          best = ranks;
        }
      }
      return Permutation::from_ranks(std::move(best));
    }
    case FasConfig::Strategy::row_sum_heuristic:
      return row_sum_order(y);
    case FasConfig::Strategy::insertion_local_search: {
      std::vector<int> order(n);
      const Permutation start = row_sum_order(y);
      for (int i = 0; i < n; ++i) order[start.rank_of(i)] = i;
      long long best_d = relocation_descent(y, order);
      std::vector<int> best = order;
      Rng rng(cfg.seed, kStreamRestarts);
      for (int r = 1; r < cfg.restarts; ++r) {
        std::vector<int> shuffled(n);
        std::iota(shuffled.begin(), shuffled.end(), 0);
        for (int i = n - 1; i > 0; --i) {
          const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
          std::swap(shuffled[i], shuffled[j]);
        }
        const long long d = relocation_descent(y, shuffled);
        if (d < best_d) {
          best_d = d;
          best = shuffled;
        }
      }
      return ranks_from_order(best);
    }
  }
  throw Error(Errc::InvalidConfig, "unknown FAS strategy");
}

LseResult lse_sst_bruteforce(const Matrix& y, const IsotonicConfig& cfg) {
  const int n = y.size();
  if (n > 8) {
    throw Error(Errc::NTooLargeForBruteForce, "brute-force least squares refuses n > 8");
  }
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);

  bool have_best = false;
  LseResult best{validate_probability_matrix(Matrix(n, 0.5), 1.0), Permutation::identity(n),
                 0.0, true};
  do {
    const Permutation pi = Permutation::from_ranks(ranks);
    IsotonicResult proj = bivariate_isotonic_project(y, pi, cfg);
    const double obj = frobenius_distance_sq(y, proj.matrix.values());
    // Lexicographic enumeration makes the first minimizer the tie-break winner.
    if (!have_best || obj < best.objective) {
      best = {std::move(proj.matrix), pi, obj, proj.converged};
      have_best = true;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return best;
}

LseResult lse_sst_bruteforce(const ObservationMatrix& y, const IsotonicConfig& cfg) {
  return lse_sst_bruteforce(y.to_real(), cfg);
}

TwoStageResult two_stage_estimate(const ObservationMatrix& y, const FasConfig& fas,
                                  const IsotonicConfig& iso) {
  if (y.mode() != ObservationMatrix::Mode::full) {
    throw Error(Errc::ModeMismatch, "two-stage estimation needs full observations");
  }
  Permutation pi = fas_permutation(y, fas);
  IsotonicResult proj = bivariate_isotonic_project(y.to_real(), pi, iso);
  return {std::move(proj.matrix), std::move(pi), proj.converged};
}

}  // namespace sst
