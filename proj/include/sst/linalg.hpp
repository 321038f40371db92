#pragma once

#include <vector>

#include "sst/matrix.hpp"

namespace sst {

struct Svd {
  // A = U diag(s) V^T with singular values descending.
  Matrix u;
  std::vector<double> s;
  Matrix v;
};

// Full SVD of a square matrix. Throws Error(SvdFailure) if the decomposition
// does not converge.
Svd svd_decompose(const Matrix& a);

// Singular values only, descending.
std::vector<double> singular_values(const Matrix& a);

// U diag(s) V^T.
Matrix svd_reconstruct(const Matrix& u, const std::vector<double>& s, const Matrix& v);

}  // namespace sst
