#include "sst/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sst/rng.hpp"

namespace sst {

double cdf_value(Cdf cdf, double t) {
  switch (cdf) {
    case Cdf::gaussian:
      return 0.5 * std::erfc(-t / std::sqrt(2.0));
    case Cdf::logistic:
      // Evaluate through exp(-|t|) so large arguments cannot overflow.
      if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
      return std::exp(t) / (1.0 + std::exp(t));
  }
  return 0.5;
}

double cdf_derivative(Cdf cdf, double t) {
  switch (cdf) {
    case Cdf::gaussian:
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
    case Cdf::logistic: {
      const double f = cdf_value(Cdf::logistic, t);
      return f * (1.0 - f);
    }
  }
  return 0.0;
}

double log_cdf(Cdf cdf, double t) {
  switch (cdf) {
    case Cdf::logistic:
      // log sigma(t) = -log(1 + exp(-t))
      return t >= 0.0 ? -std::log1p(std::exp(-t)) : t - std::log1p(std::exp(t));
    case Cdf::gaussian: {
      if (t > -10.0) return std::log(0.5 * std::erfc(-t / std::sqrt(2.0)));
      // Far tail: log Phi(t) ~ -t^2/2 - log(-t) - log sqrt(2 pi)
      //           + log(1 - 1/t^2 + 3/t^4).
      const double t2 = t * t;
      return -0.5 * t2 - std::log(-t) - 0.5 * std::log(2.0 * M_PI) +
             std::log1p(-1.0 / t2 + 3.0 / (t2 * t2));
    }
  }
  return 0.0;
}

WeightVector WeightVector::validated(std::vector<double> w, double tol) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(sum) > tol) {
    throw Error(Errc::BadWeightVector, "weight vector is not centered: <w,1> = " +
                                           std::to_string(sum));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) > 1.0 + tol) {
      throw Error(Errc::BadWeightVector, "weight exceeds the unit box", static_cast<int>(i));
    }
  }
  return WeightVector(std::move(w));
}

namespace {

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(ranks[i], ranks[j]);
  }
  return Permutation::from_ranks(std::move(ranks));
}

void skew_complete(Matrix& m) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) m(j, i) = 1.0 - m(i, j);
  }
}

}  // namespace

ProbabilityMatrix gen_uniform(int n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::NotSquare, "need n >= 2");
  Rng values(seed, kStreamGenerator);
  std::vector<double> v(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (auto& x : v) x = values.uniform(0.5, 1.0);
  std::sort(v.begin(), v.end(), std::greater<>());

  Matrix m(n);
  std::size_t k = 0;
  for (int j = n - 1; j >= 1; --j)
    for (int i = 0; i < j; ++i) m(i, j) = v[k++];
  skew_complete(m);

  Rng perm_rng(seed, kStreamPermutation);
  const Matrix shuffled = permute(m, random_permutation(n, perm_rng));
  return validate_probability_matrix(shuffled);
}

ParametricDraw gen_parametric(int n, std::uint64_t seed, Cdf cdf) {
  if (n < 2) throw Error(Errc::NotSquare, "need n >= 2");
  Rng rng(seed, kStreamGenerator);
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(-1.0, 1.0);
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / n;
  for (auto& x : w) x -= mean;
  double max_abs = 0.0;
  for (double x : w) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs > 1.0) {
    for (auto& x : w) x /= max_abs;
  }
  // Recentering leaves a ~1e-17 residual sum; remove it so the strict
  // tolerance holds for any n.
  const double residual = std::accumulate(w.begin(), w.end(), 0.0) / n;
  for (auto& x : w) x -= residual;

  auto weights = WeightVector::validated(std::move(w));
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cdf_value(cdf, weights[i] - weights[j]);
      m(j, i) = 1.0 - m(i, j);
    }
  }
  return {validate_probability_matrix(std::move(m)), std::move(weights)};
}

ProbabilityMatrix gen_high_snr(int n, double level) {
  if (n < 2) throw Error(Errc::NotSquare, "need n >= 2");
  if (!(level > 0.5 && level <= 1.0)) {
    throw Error(Errc::LevelOutOfRange, "level must lie in (1/2, 1]");
  }
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = level;
  skew_complete(m);
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix gen_independent_bands(int n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::NotSquare, "need n >= 2");
  Rng rng(seed, kStreamGenerator);
  Matrix m(n, 0.5);
  for (int band = 1; band < n; ++band) {
    for (int i = 0; i + band < n; ++i) {
      const int j = i + band;
      double lo = 0.5;
      if (j - 1 > i) lo = std::max(lo, m(i, j - 1));
      if (i + 1 < j) lo = std::max(lo, m(i + 1, j));
      m(i, j) = rng.uniform(lo, 1.0);
    }
  }
  skew_complete(m);
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix gen_bad_matrix(int n) {
  if (n < 4 || n % 4 != 0) {
    throw Error(Errc::NotDivisibleBy4, "bad matrix needs n divisible by 4");
  }
  static const double block[4][4] = {
      {4. / 8, 6. / 8, 7. / 8, 8. / 8},
      {2. / 8, 4. / 8, 7. / 8, 8. / 8},
      {1. / 8, 1. / 8, 4. / 8, 5. / 8},
      {0. / 8, 0. / 8, 3. / 8, 4. / 8},
  };
  const int b = n / 4;
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = block[i / b][j / b];
  // Diagonal blocks hold 4/8 already; force the exact diagonal anyway.
  for (int i = 0; i < n; ++i) m(i, i) = 0.5;
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix gen_noiseless(int n) {
  if (n < 2) throw Error(Errc::NotSquare, "need n >= 2");
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i == j ? 0.5 : (i < j ? 1.0 : 0.0);
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix marginals_of_ranking_distribution(
    const std::vector<std::pair<Permutation, double>>& mixture) {
  if (mixture.empty()) {
    throw Error(Errc::ProbabilitiesDoNotSumToOne, "empty ranking distribution");
  }
  const int n = mixture.front().first.size();
  double total = 0.0;
  for (const auto& [pi, p] : mixture) {
    if (pi.size() != n) throw Error(Errc::SizeMismatch, "mixture permutations disagree on n");
    total += p;
  }
  if (std::abs(total - 1.0) > kStrictTol) {
    throw Error(Errc::ProbabilitiesDoNotSumToOne,
                "mixture probabilities sum to " + std::to_string(total));
  }
  Matrix m(n, 0.0);
  for (const auto& [pi, p] : mixture) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (pi.rank_of(i) < pi.rank_of(j)) m(i, j) += p;
      }
  }
  for (int i = 0; i < n; ++i) m(i, i) = 0.5;
  // Complementary rank indicators make the skew hold up to summation order;
  // tighten it exactly.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + (1.0 - m(j, i)));
      m(i, j) = v;
      m(j, i) = 1.0 - v;
    }
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix fixture_construction3_7x7() {
  const double H = 0.5;
  const std::vector<std::vector<double>> raw = {
      {H, H, 1, 1, 1, 1, 1},
      {H, H, H, H, 1, 1, 1},
      {0, H, H, H, H, 1, 1},
      {0, H, H, H, H, H, 1},
      {0, 0, H, H, H, H, 1},
      {0, 0, 0, H, H, H, H},
      {0, 0, 0, 0, 0, H, H},
  };
  return validate_probability_matrix(raw);
}

ProbabilityMatrix fixture_fas_counterexample(int n) {
  if (n < 3 || n % 3 != 0) {
    throw Error(Errc::NotDivisibleBy3, "FAS counterexample needs n divisible by 3");
  }
  static const double block[3][3] = {
      {0.5, 0.5, 1.0},
      {0.5, 0.5, 0.75},
      {0.0, 0.25, 0.5},
  };
  const int b = n / 3;
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = block[i / b][j / b];
  for (int i = 0; i < n; ++i) m(i, i) = 0.5;
  return validate_probability_matrix(std::move(m));
}

ProbabilityMatrix fixture(Fixture which, int n) {
  switch (which) {
    case Fixture::construction3_7x7:
      return fixture_construction3_7x7();
    case Fixture::fas_counterexample:
      return fixture_fas_counterexample(n);
  }
  throw Error(Errc::UnknownFixture, "unknown fixture");
}

ProbabilityMatrix generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::uniform:
      return gen_uniform(spec.n, spec.seed);
    case GeneratorSpec::Kind::thurstone:
      return gen_parametric(spec.n, spec.seed, Cdf::gaussian).matrix;
    case GeneratorSpec::Kind::btl:
      return gen_parametric(spec.n, spec.seed, Cdf::logistic).matrix;
    case GeneratorSpec::Kind::high_snr:
      return gen_high_snr(spec.n, spec.level);
    case GeneratorSpec::Kind::independent_bands:
      return gen_independent_bands(spec.n, spec.seed);
    case GeneratorSpec::Kind::bad_matrix:
      return gen_bad_matrix(spec.n);
    case GeneratorSpec::Kind::noiseless:
      return gen_noiseless(spec.n);
    case GeneratorSpec::Kind::ranking_mixture:
      return marginals_of_ranking_distribution(spec.mixture);
  }
  throw Error(Errc::InvalidConfig, "unknown generator kind");
}

const char* kind_name(GeneratorSpec::Kind kind) {
  switch (kind) {
    case GeneratorSpec::Kind::uniform: return "uniform";
    case GeneratorSpec::Kind::thurstone: return "thurstone";
    case GeneratorSpec::Kind::btl: return "btl";
    case GeneratorSpec::Kind::high_snr: return "high_snr";
    case GeneratorSpec::Kind::independent_bands: return "independent_bands";
    case GeneratorSpec::Kind::bad_matrix: return "bad_matrix";
    case GeneratorSpec::Kind::noiseless: return "noiseless";
    case GeneratorSpec::Kind::ranking_mixture: return "ranking_mixture";
  }
  return "?";
}

GeneratorSpec::Kind kind_from_name(const std::string& name) {
  using K = GeneratorSpec::Kind;
  for (K k : {K::uniform, K::thurstone, K::btl, K::high_snr, K::independent_bands,
              K::bad_matrix, K::noiseless, K::ranking_mixture}) {
    if (name == kind_name(k)) return k;
  }
  throw Error(Errc::InvalidConfig, "unknown generator kind '" + name + "'");
}

}  // namespace sst
