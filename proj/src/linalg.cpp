#include "sst/linalg.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace sst {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const int n = m.size();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix m(static_cast<int>(e.rows()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }
bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

Svd svd_decompose(const Matrix& a) {
  const Eigen::MatrixXd e = to_eigen(a);
  // BDCSVD first; its divide-and-conquer deflation can emit NaNs on heavily
  // rank-deficient inputs (repeated rows), in which case the slower but
  // robust Jacobi path takes over.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() == Eigen::Success && all_finite(svd.singularValues()) &&
      all_finite(svd.matrixU()) && all_finite(svd.matrixV())) {
    Svd out;
    out.u = from_eigen(svd.matrixU());
    out.v = from_eigen(svd.matrixV());
    out.s.assign(svd.singularValues().data(), svd.singularValues().data() + a.size());
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> jac(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (jac.info() != Eigen::Success || !all_finite(jac.singularValues()) ||
      !all_finite(jac.matrixU()) || !all_finite(jac.matrixV())) {
    throw Error(Errc::SvdFailure, "SVD did not converge");
  }
  Svd out;
  out.u = from_eigen(jac.matrixU());
  out.v = from_eigen(jac.matrixV());
  out.s.assign(jac.singularValues().data(), jac.singularValues().data() + a.size());
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  const Eigen::MatrixXd e = to_eigen(a);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(e);
  if (svd.info() == Eigen::Success && all_finite(svd.singularValues())) {
    return std::vector<double>(svd.singularValues().data(),
                               svd.singularValues().data() + a.size());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> jac(e);
  if (jac.info() != Eigen::Success || !all_finite(jac.singularValues())) {
    throw Error(Errc::SvdFailure, "SVD did not converge");
  }
  return std::vector<double>(jac.singularValues().data(),
                             jac.singularValues().data() + a.size());
}

Matrix svd_reconstruct(const Matrix& u, const std::vector<double>& s, const Matrix& v) {
  const int n = u.size();
  // Skip zero singular values; thresholded spectra are mostly zeros.
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd eu = to_eigen(u);
  const Eigen::MatrixXd ev = to_eigen(v);
  for (int k = 0; k < n; ++k) {
    if (s[k] == 0.0) continue;
    acc.noalias() += s[k] * eu.col(k) * ev.col(k).transpose();
  }
  return from_eigen(acc);
}

}  // namespace sst
