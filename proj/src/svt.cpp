#include "sst/svt.hpp"

#include <algorithm>
#include <cmath>

#include "sst/generators.hpp"
#include "sst/linalg.hpp"
#include "sst/observation.hpp"

namespace sst {

std::vector<double> soft_threshold_singulars(const std::vector<double>& d, double lambda) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = std::max(0.0, d[i] - lambda);
  return out;
}

std::vector<double> hard_threshold_singulars(const std::vector<double>& d, double lambda) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] >= lambda ? d[i] : 0.0;
  return out;
}

double auto_lambda_full(int n) { return 2.1 * std::sqrt(static_cast<double>(n)); }

double auto_lambda_partial(int n, double p_obs) {
  return 3.0 * std::sqrt(static_cast<double>(n) / p_obs);
}

SvtResult svt_estimate(const Matrix& y, SvtConfig::Mode mode, double lambda, bool clip_to_box) {
  const int n = y.size();
  const Svd dec = svd_decompose(y);
  const std::vector<double> kept = mode == SvtConfig::Mode::soft
                                       ? soft_threshold_singulars(dec.s, lambda)
                                       : hard_threshold_singulars(dec.s, lambda);
  SvtResult res;
  res.raw = svd_reconstruct(dec.u, kept, dec.v);
  res.lambda_used = lambda;
  if (clip_to_box) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = 0.5;
      for (int j = i + 1; j < n; ++j) {
        // Exact Frobenius projection onto the skew-complement set, then the
        // box; clamping a complementary pair keeps the skew.
        const double v = 0.5 * (res.raw(i, j) + 1.0 - res.raw(j, i));
        const double c = std::clamp(v, 0.0, 1.0);
        m(i, j) = c;
        m(j, i) = 1.0 - c;
      }
    }
    res.clipped = validate_probability_matrix(std::move(m), kLooseTol);
  }
  return res;
}

SvtResult svt_estimate(const ObservationMatrix& y, const SvtConfig& cfg) {
  if (y.mode() != ObservationMatrix::Mode::full) {
    throw Error(Errc::ModeMismatch, "partial observations must be linearized before SVT");
  }
  const double lambda = cfg.lambda.value_or(auto_lambda_full(y.size()));
  return svt_estimate(y.to_real(), cfg.mode, lambda, cfg.clip_to_box);
}

SvtResult svt_estimate(const LinearizedObservation& y, const SvtConfig& cfg) {
  const double lambda = cfg.lambda.value_or(auto_lambda_partial(y.size(), y.p_obs));
  return svt_estimate(y.values, cfg.mode, lambda, cfg.clip_to_box);
}

namespace {

bool tail_bound_holds(const std::vector<double>& sv, int n, int s) {
  double tail = 0.0;
  for (int j = s; j < n; ++j) tail += sv[j] * sv[j];
  const double n2 = static_cast<double>(n) * n;
  return tail / n2 <= 1.0 / s + 1e-9;
}

}  // namespace

bool rank_s_tail_bound_check(const ProbabilityMatrix& m, int s) {
  const int n = m.size();
  if (s < 1 || s > n - 1) throw Error(Errc::SOutOfRange, "s must lie in [1, n-1]");
  return tail_bound_holds(singular_values(m.values()), n, s);
}

bool rank_s_tail_bound_check_all(const ProbabilityMatrix& m) {
  const int n = m.size();
  const std::vector<double> sv = singular_values(m.values());
  for (int s = 1; s < n; ++s) {
    if (!tail_bound_holds(sv, n, s)) return false;
  }
  return true;
}

bool noiseless_spectrum_check(int n, std::uint64_t seed) {
  if (n < 18) throw Error(Errc::NTooSmall, "spectrum sandwich needs n >= 18");
  const ObservationMatrix y = sample_full(gen_noiseless(n), seed);
  const std::vector<double> sv = singular_values(y.to_real());
  const int i_max = n / 6 - 1;
  for (int i = 1; i <= i_max; ++i) {
    // The bounds track the i-th smallest eigenvalue of the inverse Gram
    // matrix of the ones-triangle, which is the (i+1)-th largest singular
    // value of Y.
    const double sigma = sv[i];
    const double lower = n / (4.0 * M_PI * (i + 1)) - 0.5;
    if (sigma < lower) return false;
    if (i >= 2) {
      const double upper = n / (M_PI * (i - 1)) + 0.5;
      if (sigma > upper) return false;
    }
  }
  return true;
}

}  // namespace sst
