#include "sst/mle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sst {

namespace {

bool has_observation(const ObservationMatrix& y) {
  const int n = y.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (y.present(i, j)) return true;
  return false;
}

// d/dt of -log F(t), evaluated through logs so tail ratios stay finite.
double neg_log_cdf_slope(Cdf cdf, double t) {
  if (cdf == Cdf::logistic) return cdf_value(Cdf::logistic, t) - 1.0;
  const double log_pdf = -0.5 * t * t - 0.5 * std::log(2.0 * M_PI);
  return -std::exp(log_pdf - log_cdf(Cdf::gaussian, t));
}

}  // namespace

double neg_log_likelihood(const ObservationMatrix& y, const std::vector<double>& w, Cdf cdf) {
  const int n = y.size();
  double nll = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!y.present(i, j)) continue;
      const double d = w[i] - w[j];
      nll -= y.outcome(i, j) == 1 ? log_cdf(cdf, d) : log_cdf(cdf, -d);
    }
  return nll;
}

std::vector<double> nll_gradient(const ObservationMatrix& y, const std::vector<double>& w,
                                 Cdf cdf) {
  const int n = y.size();
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!y.present(i, j)) continue;
      const double d = w[i] - w[j];
      const double slope = y.outcome(i, j) == 1 ? neg_log_cdf_slope(cdf, d)
                                                : -neg_log_cdf_slope(cdf, -d);
      g[i] += slope;
      g[j] -= slope;
    }
  return g;
}

std::vector<double> project_weight_constraints(std::vector<double> w) {
  const int n = static_cast<int>(w.size());
  for (int it = 0; it < 1000; ++it) {
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / n;
    for (auto& x : w) x -= mean;
    double excess = 0.0;
    for (double x : w) excess = std::max(excess, std::abs(x) - 1.0);
    // A centered iterate inside the box (to 1e-12) is the fixed point we
    // keep: <w,1> is then exactly zero.
    if (excess <= 1e-12) return w;
    for (auto& x : w) x = std::clamp(x, -1.0, 1.0);
  }
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / n;
  for (auto& x : w) x -= mean;
  return w;
}

MleResult mle_fit(const ObservationMatrix& y, const MleConfig& cfg) {
  if (cfg.grad_tol <= 0.0 || cfg.max_iters < 1 || cfg.step <= 0.0) {
    throw Error(Errc::InvalidConfig, "MLE config needs positive tolerances");
  }
  if (!has_observation(y)) {
    throw Error(Errc::NoObservations, "no observed pair to fit");
  }
  const int n = y.size();
  std::vector<double> w(n, 0.0);
  double f = neg_log_likelihood(y, w, cfg.cdf);
  double t = cfg.step;
  bool converged = false;
  int iters = 0;

  for (; iters < cfg.max_iters; ++iters) {
    const std::vector<double> g = nll_gradient(y, w, cfg.cdf);

    std::vector<double> next;
    double f_next = 0.0;
    for (;;) {
      std::vector<double> cand(n);
      for (int i = 0; i < n; ++i) cand[i] = w[i] - t * g[i];
      cand = project_weight_constraints(std::move(cand));
      f_next = neg_log_likelihood(y, cand, cfg.cdf);
      double inner = 0.0, move_sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = cand[i] - w[i];
        inner += g[i] * d;
        move_sq += d * d;
      }
      if (f_next <= f + inner + move_sq / (2.0 * t) + 1e-15 || t < 1e-16) {
        next = std::move(cand);
        break;
      }
      t *= 0.5;
    }

    double mapping_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = (w[i] - next[i]) / t;
      mapping_sq += d * d;
    }
    w = std::move(next);
    f = f_next;
    if (std::sqrt(mapping_sq) <= cfg.grad_tol) {
      converged = true;
      ++iters;
      break;
    }
    t = std::min(t * 2.0, cfg.step);  // re-expand after cautious steps
  }

  return {WeightVector::validated(std::move(w)), converged, iters, f};
}

ProbabilityMatrix induce_matrix(const WeightVector& w, Cdf cdf) {
  const int n = w.size();
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cdf_value(cdf, w[i] - w[j]);
      m(j, i) = 1.0 - m(i, j);
    }
  }
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix mle_matrix_estimate(const ObservationMatrix& y, const MleConfig& cfg) {
  return induce_matrix(mle_fit(y, cfg).weights, cfg.cdf);
}

}  // namespace sst
