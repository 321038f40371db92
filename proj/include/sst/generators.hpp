#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sst/matrix.hpp"

namespace sst {

enum class Cdf { gaussian, logistic };

double cdf_value(Cdf cdf, double t);
double cdf_derivative(Cdf cdf, double t);
double log_cdf(Cdf cdf, double t);  // numerically safe log F(t)

// Parametric quality scores: centered (<w,1> = 0) and box bounded
// (||w||_inf <= 1), both within `tol`.
class WeightVector {
 public:
  static WeightVector validated(std::vector<double> w, double tol = kStrictTol);
  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[i]; }
  const std::vector<double>& values() const { return w_; }

 private:
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {}
  std::vector<double> w_;
};

// --- ground-truth generators --------------------------------------------------
// All outputs pass validate_probability_matrix at the strict tolerance and
// are SST; the same seed always reproduces the same matrix.

// C(n,2) i.i.d. Uniform[1/2,1] draws sorted descending and written into the
// upper triangle column-by-column (j = n..2, top to bottom), which makes rows
// nondecreasing rightward and columns nonincreasing downward; the result is
// skew-completed and conjugated by a uniformly random permutation.
ProbabilityMatrix gen_uniform(int n, std::uint64_t seed);

struct ParametricDraw {
  ProbabilityMatrix matrix;
  WeightVector weights;
};

// w drawn uniformly from [-1,1]^n, recentered to mean zero, rescaled by
// max(1, ||w||_inf); M[i][j] = F(w_i - w_j).
ParametricDraw gen_parametric(int n, std::uint64_t seed, Cdf cdf);

// `level` above the diagonal in the identity order, 1-level below, 1/2 on
// the diagonal. Member of the high-SNR class at gamma = level - 1/2.
ProbabilityMatrix gen_high_snr(int n, double level);

// Diagonal 1/2; band k above the diagonal filled left to right with
// Uniform[max(left, below, 1/2), 1] draws; skew-completed.
ProbabilityMatrix gen_independent_bands(int n, std::uint64_t seed);

// The 4x4-block matrix (1/8)*[[4,6,7,8],[2,4,7,8],[1,1,4,5],[0,0,3,4]] with
// constant n/4 x n/4 blocks. SST, but far from every parametric model.
ProbabilityMatrix gen_bad_matrix(int n);

// 1 above the diagonal, 0 below, 1/2 on it.
ProbabilityMatrix gen_noiseless(int n);

// Pairwise marginals of a distribution over total rankings:
// M[i][j] = sum_k p_k * 1[pi_k ranks i above j].
ProbabilityMatrix marginals_of_ranking_distribution(
    const std::vector<std::pair<Permutation, double>>& mixture);

// Hard-coded fixtures.
enum class Fixture { construction3_7x7, fas_counterexample };
// construction3_7x7 ignores n; fas_counterexample needs n divisible by 3
// (blocks 1/2, 3/4, 1 of size n/3).
ProbabilityMatrix fixture(Fixture which, int n = 7);
ProbabilityMatrix fixture_construction3_7x7();
ProbabilityMatrix fixture_fas_counterexample(int n);

// --- harness-facing generator description -------------------------------------

struct GeneratorSpec {
  enum class Kind {
    uniform,
    thurstone,
    btl,
    high_snr,
    independent_bands,
    bad_matrix,
    noiseless,
    ranking_mixture,
  };
  Kind kind = Kind::uniform;
  int n = 0;
  std::uint64_t seed = 0;
  double level = 0.9;  // high_snr only
  std::vector<std::pair<Permutation, double>> mixture;  // ranking_mixture only
};

ProbabilityMatrix generate(const GeneratorSpec& spec);
const char* kind_name(GeneratorSpec::Kind kind);
GeneratorSpec::Kind kind_from_name(const std::string& name);

}  // namespace sst
