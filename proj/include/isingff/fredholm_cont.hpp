#pragma once

#include <Eigen/Dense>
#include <vector>

#include "isingff/errors.hpp"
#include "isingff/model.hpp"
#include "isingff/quad.hpp"

namespace isingff {

// Low-temperature integrable kernel K^-(x,y) on (0,1) built from
//   F(x) = F1(n+1/2; -1/2, 1; n+2; t, t x).
// The diagonal uses d/dx [x F(x)] = F + x t dF1/dy. Throws DomainError
// unless 0 < x, y < 1.
double kernel_low(double x, double y, int n, double t);

struct HighKernel {
  double K0 = 0.0;
  double K1x = 0.0;
  double K2xy = 0.0;
};

// High-temperature bordered-kernel components with
//   F(x) = F1(n+1/2; 1/2, 1; n+1; t, t x).
// K1 carries t^{3n/4} (see README); K0 and K2 are as in the minor formula.
HighKernel kernel_high(double x, double y, int n, double t, Diagnostics* diag = nullptr);

// Nystrom discretisation on a Gauss-Jacobi rule whose weight absorbs the
// separable endpoint factors:
//   low:  M = W^{1/2} K~ W^{1/2}, weight x^{n+1/2}(1-x)^{-1/2}, det(I - lambda^2 M);
//   high: M = W^{1/2} R~ W^{1/2} for the reduced kernel R = K2 - K1 K1^T / K0,
//         weight x^{n+1/2}(1-x)^{1/2}, minor lambda (K0/pi) det(I + lambda^2 M).
struct NystromSystem {
  Phase phase = Phase::Low;
  QuadRule rule;
  Eigen::MatrixXd M;
  double K0 = 0.0;  // high phase only
};

NystromSystem nystrom_system(Phase phase, int n, double t, int q);

struct ContinuousResult {
  double value = 0.0;    // full Nystrom determinant (low) or minor (high)
  double neumann_sum = 0.0;  // partial Neumann sum through p_max
  std::vector<double> neumann;  // f^(2p) or f^(2p+1), p = 0..p_max
  double est_error = 0.0;       // |value(q) - value(2q)|
};

// Continuous Fredholm route without the (1-t)^{1/4} prefactor.
// Neumann terms p <= 3 are summed over ordered node tuples (principal
// minors); higher p use elementary symmetric functions of the eigenvalues.
ContinuousResult fredholm_cont(const ModelPoint& point, int p_max = 3, int q = 32,
                               Diagnostics* diag = nullptr);

}  // namespace isingff
