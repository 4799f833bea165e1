#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace isingff {

enum class RuleFamily { Jacobi, Circle };

// Jacobi rules live on (0,1) with weight x^beta (1-x)^alpha. Circle rules
// hold angles in (-pi, pi] with weights 1/M, i.e. the measure dtheta/(2 pi).
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  RuleFamily family = RuleFamily::Jacobi;
  double alpha = 0.0;
  double beta = 0.0;
  int M = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};

QuadRule gauss_jacobi_rule(int q, double alpha, double beta);
QuadRule circle_rule(int M);

// Trigonometric moments w_k, k = -k_max..k_max.
template <typename Scalar>
struct MomentTable {
  int k_max = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  double doubling_gap = 0.0;

  Scalar operator()(int k) const { return values(k + k_max); }
  bool covers(int k) const { return k >= -k_max && k <= k_max; }
};

using ComplexSymbol = std::function<std::complex<double>(double theta)>;

// w_k = int dtheta/(2 pi) w(e^{i theta}) e^{-i k theta} by the M-point
// trapezoid rule. Throws AccuracyError if doubling M moves any moment by more
// than 1e-12.
MomentTable<std::complex<double>> circle_moments(const ComplexSymbol& symbol, int k_max, int M);

// Real part of a table whose imaginary parts are below `tol`.
MomentTable<double> real_moments(const MomentTable<std::complex<double>>& w, double tol = 1e-12);

}  // namespace isingff
