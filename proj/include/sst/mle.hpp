#pragma once

#include <vector>

#include "sst/generators.hpp"
#include "sst/matrix.hpp"

namespace sst {

struct MleConfig {
  Cdf cdf = Cdf::gaussian;
  double grad_tol = 1e-7;  // stop when the gradient-mapping norm drops below
  int max_iters = 5000;
  double step = 1.0;       // initial backtracking step size
};

struct MleResult {
  WeightVector weights;
  bool converged = true;
  int iters = 0;
  double objective = 0.0;
};

// Negative log-likelihood of the observed pairs (i < j, diagonal excluded)
// under M[i][j] = F(w_i - w_j).
double neg_log_likelihood(const ObservationMatrix& y, const std::vector<double>& w, Cdf cdf);
std::vector<double> nll_gradient(const ObservationMatrix& y, const std::vector<double>& w,
                                 Cdf cdf);

// Euclidean-feasible point of {<w,1> = 0, ||w||_inf <= 1} reached by cyclic
// alternating projection between the hyperplane and the box.
std::vector<double> project_weight_constraints(std::vector<double> w);

// Maximum-likelihood weights by projected gradient descent with backtracking
// line search. Accepted steps never increase the objective. Non-convergence
// within max_iters is a soft failure: the best iterate is returned flagged.
MleResult mle_fit(const ObservationMatrix& y, const MleConfig& cfg = {});

// M[i][j] = F(w_i - w_j); skew-complement holds identically since
// F(t) = 1 - F(-t).
ProbabilityMatrix induce_matrix(const WeightVector& w, Cdf cdf);

// induce_matrix(mle_fit(y, cfg).weights, cfg.cdf).
ProbabilityMatrix mle_matrix_estimate(const ObservationMatrix& y, const MleConfig& cfg = {});

}  // namespace sst
