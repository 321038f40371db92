#pragma once

#include "sst/matrix.hpp"

namespace sst {

// (1/n^2) * squared Frobenius distance. Diagonals of valid matrices are both
// 1/2 and contribute nothing, so the full-matrix sum equals the off-diagonal
// one.
double normalized_mse(const ProbabilityMatrix& a, const ProbabilityMatrix& b);

// Both matrices are clipped entrywise to [eps, 1-eps] first, then
// sum_{i != j} a*log(a/b) + (1-a)*log((1-a)/(1-b)).
double kl_divergence(const ProbabilityMatrix& a, const ProbabilityMatrix& b, double eps = 0.05);

// Total rank displacement against the identity order.
long long spearman_footrule(const Permutation& pi);

// Number of pairs ordered differently than in the identity (Kendall tau).
long long kemeny(const Permutation& pi);

// ||pi(M) - M||_F^2: Spearman's footrule reweighted by how far apart the
// swapped rows of M are.
double reweighted_footrule(const ProbabilityMatrix& m, const Permutation& pi);

}  // namespace sst
