#pragma once

#include <cstdint>

#include "sst/matrix.hpp"

namespace sst {

// In-place pool-adjacent-violators: minimizes sum (x-y)^2 over nondecreasing x.
void pava_nondecreasing(double* x, int n);

struct IsotonicConfig {
  double tol = 1e-8;     // Frobenius change between successive Dykstra cycles
  int max_iters = 20000; // cycle cap; exceeding it is a soft failure
};

struct IsotonicResult {
  ProbabilityMatrix matrix;
  bool converged = true;
  int iters = 0;
};

// Frobenius projection of an arbitrary real matrix onto the SST matrices
// faithful to `pi`: entries in [0,1], skew-complement, rows nondecreasing and
// columns nonincreasing in the pi order. Dykstra's alternating projections
// over the four convex sets (row monotone, column monotone, skew affine,
// box), with PAVA as the per-row/column projector. On hitting max_iters the
// best iterate is still returned with converged = false.
IsotonicResult bivariate_isotonic_project(const Matrix& y, const Permutation& pi,
                                          const IsotonicConfig& cfg = {});

struct FasConfig {
  enum class Strategy { exhaustive, row_sum_heuristic, insertion_local_search };
  Strategy strategy = Strategy::exhaustive;
  int restarts = 4;        // insertion_local_search only
  std::uint64_t seed = 0;  // shuffled restart starts
};

// Number of pairs whose observed outcome disagrees with the order.
long long fas_disagreements(const ObservationMatrix& y, const Permutation& pi);

// Disagreement-minimizing permutation. `exhaustive` is exact and refuses
// n > 10; `row_sum_heuristic` ranks by win counts (ties by index);
// `insertion_local_search` starts from the row-sum order plus shuffled
// restarts and relocates single items until no move helps, so it never does
// worse than the row-sum order.
Permutation fas_permutation(const ObservationMatrix& y, const FasConfig& cfg = {});

struct LseResult {
  ProbabilityMatrix matrix;
  Permutation permutation;
  double objective = 0.0;
  bool converged = true;
};

// Constrained least squares over the whole SST class by exhausting the n!
// permutations; ties in the objective resolve to the lexicographically
// smallest rank vector. Guarded at n <= 8.
LseResult lse_sst_bruteforce(const Matrix& y, const IsotonicConfig& cfg = {});
LseResult lse_sst_bruteforce(const ObservationMatrix& y, const IsotonicConfig& cfg = {});

struct TwoStageResult {
  ProbabilityMatrix matrix;
  Permutation permutation;
  bool converged = true;
};

// FAS step followed by the bivariate isotonic projection; the output is
// always an SST matrix.
TwoStageResult two_stage_estimate(const ObservationMatrix& y, const FasConfig& fas = {},
                                  const IsotonicConfig& iso = {});

}  // namespace sst
