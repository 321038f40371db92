#include <doctest.h>

#include <cmath>

#include "biso_oracle.hpp"
#include "sst/classes.hpp"
#include "sst/generators.hpp"
#include "sst/isotonic.hpp"
#include "sst/metrics.hpp"
#include "sst/observation.hpp"
#include "sst/rng.hpp"

using namespace sst;

namespace {

Matrix random_square(int n, std::uint64_t seed, double lo = -0.2, double hi = 1.2) {
  Rng rng(seed, 123);
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

}  // namespace

TEST_CASE("pava pools violators") {
  std::vector<double> x = {1, 3, 2, 4};
  pava_nondecreasing(x.data(), 4);
  CHECK(x == std::vector<double>{1, 2.5, 2.5, 4});
  std::vector<double> y = {3, 2, 1};
  pava_nondecreasing(y.data(), 3);
  CHECK(y == std::vector<double>{2, 2, 2});
  std::vector<double> z = {1, 2, 3};
  pava_nondecreasing(z.data(), 3);
  CHECK(z == std::vector<double>{1, 2, 3});
}

TEST_CASE("projection is the identity on feasible input") {
  const ProbabilityMatrix m = gen_independent_bands(6, 3);
  const IsotonicResult res = bivariate_isotonic_project(m.values(), Permutation::identity(6));
  CHECK(std::sqrt(frobenius_distance_sq(res.matrix.values(), m.values())) < 1e-7);
  CHECK(res.converged);
}

TEST_CASE("the displayed 2x2 projection") {
  Matrix y(2, 0.5);
  y(0, 1) = 0.2;
  y(1, 0) = 0.8;
  const IsotonicResult res = bivariate_isotonic_project(y, Permutation::identity(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(res.matrix(i, j) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("projection matches the enumeration oracle on random 4x4 input") {
  IsotonicConfig cfg;
  cfg.tol = 1e-10;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix y = random_square(4, seed);
    const Permutation pi =
        seed % 2 ? Permutation::from_ranks({2, 0, 3, 1}) : Permutation::identity(4);
    const Matrix expected = testing::biso_projection_oracle(y, pi);
    const IsotonicResult got = bivariate_isotonic_project(y, pi, cfg);
    CHECK(std::sqrt(frobenius_distance_sq(got.matrix.values(), expected)) < 1e-5);
  }
}

TEST_CASE("projection output is feasible, idempotent and optimal against fixtures") {
  const Matrix y = random_square(5, 77);
  const Permutation pi = Permutation::from_ranks({4, 2, 0, 1, 3});
  IsotonicConfig cfg;
  cfg.tol = 1e-10;
  const IsotonicResult res = bivariate_isotonic_project(y, pi, cfg);
  CHECK(is_sst(res.matrix, kLooseTol).member);

  const IsotonicResult again = bivariate_isotonic_project(res.matrix.values(), pi, cfg);
  CHECK(std::sqrt(frobenius_distance_sq(again.matrix.values(), res.matrix.values())) < 1e-6);

  // No feasible fixture may be closer to y than the projection.
  const double d_proj = frobenius_distance_sq(y, res.matrix.values());
  for (std::uint64_t s = 0; s < 8; ++s) {
    const ProbabilityMatrix feasible =
        permute(gen_independent_bands(5, s), pi.inverse());
    CHECK(d_proj <= frobenius_distance_sq(y, feasible.values()) + 1e-6);
  }
}

TEST_CASE("max-iteration cap is a soft failure") {
  IsotonicConfig cfg;
  cfg.tol = 1e-14;
  cfg.max_iters = 2;
  const IsotonicResult res = bivariate_isotonic_project(random_square(5, 3),
                                                        Permutation::identity(5), cfg);
  CHECK(!res.converged);
  CHECK(res.matrix.size() == 5);  // iterate still usable
}

TEST_CASE("fas disagreements and exhaustive minimization") {
  const ObservationMatrix noiseless = sample_full(gen_noiseless(5), 1);
  CHECK(fas_disagreements(noiseless, Permutation::identity(5)) == 0);
  const Permutation found = fas_permutation(noiseless, {FasConfig::Strategy::exhaustive});
  CHECK(found == Permutation::identity(5));

  // Deterministic 3-cycle: every ordering disagrees with exactly one pair.
  Matrix cyc(3, 0.5);
  cyc(0, 1) = 1;
  cyc(1, 0) = 0;
  cyc(1, 2) = 1;
  cyc(2, 1) = 0;
  cyc(2, 0) = 1;
  cyc(0, 2) = 0;
  const ObservationMatrix y = sample_full(validate_probability_matrix(cyc), 5);
  const Permutation best = fas_permutation(y, {FasConfig::Strategy::exhaustive});
  CHECK(fas_disagreements(y, best) == 1);

  FasConfig big;
  big.strategy = FasConfig::Strategy::exhaustive;
  const ObservationMatrix wide = sample_full(gen_uniform(11, 1), 2);
  CHECK_THROWS_AS(fas_permutation(wide, big), Error);
}

TEST_CASE("local search never loses to the row-sum heuristic") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ObservationMatrix y = sample_full(gen_uniform(14, seed), seed + 100);
    const Permutation rowsum = fas_permutation(y, {FasConfig::Strategy::row_sum_heuristic});
    FasConfig ls;
    ls.strategy = FasConfig::Strategy::insertion_local_search;
    ls.restarts = 3;
    ls.seed = seed;
    const Permutation local = fas_permutation(y, ls);
    CHECK(fas_disagreements(y, local) <= fas_disagreements(y, rowsum));
  }
}

TEST_CASE("exhaustive FAS is never beaten by the heuristics") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ObservationMatrix y = sample_full(gen_uniform(7, seed), seed + 9);
    const long long exact =
        fas_disagreements(y, fas_permutation(y, {FasConfig::Strategy::exhaustive}));
    FasConfig ls;
    ls.strategy = FasConfig::Strategy::insertion_local_search;
    const long long local = fas_disagreements(y, fas_permutation(y, ls));
    CHECK(exact <= local);
  }
}

TEST_CASE("brute-force least squares") {
  // Noiseless input: exact recovery off the diagonal.
  const ObservationMatrix noiseless = sample_full(gen_noiseless(4), 3);
  const LseResult res = lse_sst_bruteforce(noiseless);
  const ProbabilityMatrix truth = gen_noiseless(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j) CHECK(res.matrix(i, j) == doctest::Approx(truth(i, j)).epsilon(1e-6));
    }

  // Single pair: the free entry projects onto [1/2, 1].
  Matrix y2(2, 0.5);
  y2(0, 1) = 1;
  y2(1, 0) = 0;
  const LseResult r2 = lse_sst_bruteforce(y2);
  CHECK(r2.matrix(0, 1) == doctest::Approx(1.0).epsilon(1e-7));

  // All-half input: everything ties, identity wins the tie-break.
  const LseResult rh = lse_sst_bruteforce(Matrix(3, 0.5));
  CHECK(rh.permutation == Permutation::identity(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(rh.matrix(i, j) == doctest::Approx(0.5));

  CHECK_THROWS_AS(lse_sst_bruteforce(Matrix(9, 0.5)), Error);
}

TEST_CASE("brute force is optimal against the per-permutation oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ObservationMatrix y = sample_full(gen_uniform(4, seed), seed + 31);
    IsotonicConfig cfg;
    cfg.tol = 1e-10;
    const LseResult res = lse_sst_bruteforce(y, cfg);
    const double oracle = testing::lse_objective_oracle(y.to_real());
    CHECK(res.objective == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("two-stage estimator recovers noiseless data and lands in SST") {
  const ObservationMatrix noiseless = sample_full(gen_noiseless(6), 8);
  const TwoStageResult res = two_stage_estimate(noiseless);
  const ProbabilityMatrix truth = gen_noiseless(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i != j) CHECK(res.matrix(i, j) == doctest::Approx(truth(i, j)).epsilon(1e-6));
    }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FasConfig ls;
    ls.strategy = FasConfig::Strategy::insertion_local_search;
    ls.seed = seed;
    const ObservationMatrix y = sample_full(gen_uniform(12, seed), seed);
    const TwoStageResult r = two_stage_estimate(y, ls);
    CHECK(is_sst(r.matrix, kLooseTol).member);
  }
}

TEST_CASE("two-stage beats the flat baseline on high-SNR data") {
  double mse_sum = 0.0;
  const ProbabilityMatrix truth = gen_high_snr(64, 0.9);
  FasConfig ls;
  ls.strategy = FasConfig::Strategy::insertion_local_search;
  for (std::uint64_t t = 0; t < 20; ++t) {
    ls.seed = t;
    const TwoStageResult r = two_stage_estimate(sample_full(truth, t), ls);
    mse_sum += normalized_mse(r.matrix, truth);
  }
  CHECK(mse_sum / 20.0 < 0.16);  // all-half baseline: E (0.9-0.5)^2 = 0.16
}

TEST_CASE("brute force never loses to the two-stage estimator") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ObservationMatrix y = sample_full(gen_uniform(5, seed), seed + 1);
    IsotonicConfig cfg;
    cfg.tol = 1e-10;
    const LseResult exact = lse_sst_bruteforce(y, cfg);
    const TwoStageResult two = two_stage_estimate(y, {FasConfig::Strategy::exhaustive}, cfg);
    CHECK(exact.objective <=
          frobenius_distance_sq(y.to_real(), two.matrix.values()) + 1e-6);
  }
}

TEST_CASE("bounded-displacement permutations have small approximation bias") {
  // ||M - pi(M)||_F^2 <= 2 d n for identity-faithful M and displacement <= d.
  const ProbabilityMatrix m = gen_independent_bands(40, 5);
  for (int d : {1, 3, 5}) {
    std::vector<int> ranks(40);
    for (int i = 0; i < 40; ++i) ranks[i] = i;
    // Banded shuffle: swap within blocks of size d+1.
    for (int start = 0; start + d < 40; start += d + 1) {
      std::swap(ranks[start], ranks[start + d]);
    }
    const Permutation pi = Permutation::from_ranks(ranks);
    int max_disp = 0;
    for (int i = 0; i < 40; ++i) max_disp = std::max(max_disp, std::abs(pi.rank_of(i) - i));
    CHECK(max_disp <= d);
    CHECK(frobenius_distance_sq(permute(m, pi).values(), m.values()) <= 2.0 * d * 40 + 1e-9);
  }
}
