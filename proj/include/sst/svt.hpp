#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sst/matrix.hpp"

namespace sst {

struct SvtConfig {
  enum class Mode { soft, hard };
  Mode mode = Mode::soft;
  // Empty means auto: 2.1*sqrt(n) on full observations, 3*sqrt(n/p_obs) on
  // linearized partial ones.
  std::optional<double> lambda;
  bool clip_to_box = true;
};

struct SvtResult {
  // Thresholded reconstruction before any projection.
  Matrix raw;
  // Present when clip_to_box: skew restored by averaging with 1 - transpose,
  // then clamped to [0,1].
  std::optional<ProbabilityMatrix> clipped;
  double lambda_used = 0.0;

  const ProbabilityMatrix& estimate() const { return *clipped; }
};

// Elementwise max(0, d - lambda) on a nonnegative spectrum.
std::vector<double> soft_threshold_singulars(const std::vector<double>& d, double lambda);
// d * 1[d >= lambda], no shrinkage.
std::vector<double> hard_threshold_singulars(const std::vector<double>& d, double lambda);

SvtResult svt_estimate(const ObservationMatrix& y, const SvtConfig& cfg = {});
SvtResult svt_estimate(const LinearizedObservation& y, const SvtConfig& cfg = {});
// Core path on an arbitrary real matrix; `lambda` must be resolved.
SvtResult svt_estimate(const Matrix& y, SvtConfig::Mode mode, double lambda, bool clip_to_box);

double auto_lambda_full(int n);
double auto_lambda_partial(int n, double p_obs);

// Test oracle: (1/n^2) * sum_{j>s} sigma_j^2(M) <= 1/s, which holds for
// every SST matrix.
bool rank_s_tail_bound_check(const ProbabilityMatrix& m, int s);
// Same bound for every s in [1, n-1] off one decomposition.
bool rank_s_tail_bound_check_all(const ProbabilityMatrix& m);

// Samples an observation from the noiseless matrix and verifies the spectral
// sandwich n/(4 pi (i+1)) - 1/2 <= sigma_{n-i-1}(Y) <= n/(pi (i-1)) + 1/2
// for i in [1, n/6 - 1]; the upper side applies only for i >= 2.
bool noiseless_spectrum_check(int n, std::uint64_t seed = 0);

}  // namespace sst
