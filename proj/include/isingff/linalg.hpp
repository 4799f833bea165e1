#pragma once

// Small dense helpers shared by the determinant routes.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

namespace isingff {

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() == 0) return Scalar(1);
  if (a.rows() <= 4) return a.determinant();
  return Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(a.eval())
      .determinant();
}

// Reciprocal condition estimate from the LU factors (1-norm).
template <typename Derived>
double reciprocal_condition(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(a.eval())
      .rcond();
}

// Sum of all p x p principal minors of a, i.e. the coefficient e_p in
// det(I + mu a) = sum_p e_p mu^p, by explicit enumeration of index subsets.
template <typename Derived>
typename Derived::Scalar principal_minor_sum(const Eigen::MatrixBase<Derived>& a, int p) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(a.rows());
  if (p == 0) return Scalar(1);
  if (p > n) return Scalar(0);
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sub(p, p);
  Scalar total(0);
  while (true) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) sub(i, j) = a(idx[i], idx[j]);
    total += determinant(sub);
    int k = p - 1;
    while (k >= 0 && idx[k] == n - p + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

// e_0..e_pmax of the eigenvalues of a (same coefficients as above).
template <typename Derived>
Eigen::VectorXd neumann_coefficients(const Eigen::MatrixBase<Derived>& a, int p_max) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(p_max + 1);
  e(0) = 1.0;
  if (a.rows() == 0) return e;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.template cast<std::complex<double>>(), false);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(p_max + 1);
  c(0) = 1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    for (int p = std::min<int>(p_max, i + 1); p >= 1; --p) c(p) += ev * c(p - 1);
  }
  return c.real();
}

}  // namespace isingff
