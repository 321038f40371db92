#include "sst/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sst {

double normalized_mse(const ProbabilityMatrix& a, const ProbabilityMatrix& b) {
  const double n = a.size();
  return frobenius_distance_sq(a, b) / (n * n);
}

double kl_divergence(const ProbabilityMatrix& a, const ProbabilityMatrix& b, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw Error(Errc::EpsOutOfRange, "clip level must lie in (0, 1/2]");
  }
  const int n = a.size();
  if (b.size() != n) throw Error(Errc::SizeMismatch, "matrix sizes differ");
  double kl = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double p = std::clamp(a(i, j), eps, 1.0 - eps);
      const double q = std::clamp(b(i, j), eps, 1.0 - eps);
      kl += p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    }
  return kl;
}

long long spearman_footrule(const Permutation& pi) {
  long long s = 0;
  for (int i = 0; i < pi.size(); ++i) s += std::abs(pi.rank_of(i) - i);
  return s;
}

long long kemeny(const Permutation& pi) {
  const int n = pi.size();
  long long inv = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pi.rank_of(i) > pi.rank_of(j)) ++inv;
  return inv;
}

double reweighted_footrule(const ProbabilityMatrix& m, const Permutation& pi) {
  return frobenius_distance_sq(permute(m, pi), m);
}

}  // namespace sst
