#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "isingff/errors.hpp"
#include "isingff/linalg.hpp"
#include "isingff/model.hpp"
#include "isingff/quad.hpp"

namespace isingff {

// Toeplitz matrix [w_{-eps + j - k}]_{j,k=0..n-1}.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> toeplitz_matrix(const MomentTable<Scalar>& w,
                                                                       int n, int eps) {
  if (n < 0) throw DomainError("toeplitz_matrix: n must be >= 0");
  if (!w.covers(n + 1) || !w.covers(-(n + 1)))
    throw DomainError("toeplitz_matrix: moment window must cover |j| <= n+1");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a(j, k) = w(-eps + j - k);
  return a;
}

// I_n[zeta^eps w] with I_0 := 1. Records a warning when the reciprocal
// condition number falls below 1e-13.
template <typename Scalar>
Scalar toeplitz_det(const MomentTable<Scalar>& w, int n, int eps, Diagnostics* diag = nullptr) {
  if (eps < -1 || eps > 1) throw DomainError("toeplitz_det: eps must be -1, 0 or 1");
  if (n == 0) return Scalar(1);
  auto a = toeplitz_matrix(w, n, eps);
  if (diag && reciprocal_condition(a) < 1e-13)
    diag->warn("toeplitz_det: near-singular Toeplitz matrix at n = " + std::to_string(n));
  return determinant(a);
}

struct BopsState {
  MomentTable<double> moments;
  ComplexSymbol symbol;  // needed by the Cauchy-integral evaluators
  int n_max = 0;
  // Index n = 0..n_max+1.
  Eigen::VectorXd I, I_plus, I_minus;  // I_n[w], I_n[zeta w], I_n[zeta^-1 w]
  Eigen::VectorXd kappa_sq;            // I_n / I_{n+1}, n = 0..n_max
  Eigen::VectorXd r, rbar;             // n = 0..n_max+1, r_0 = rbar_0 = 1
  // Coefficients of phi_n and phi*_n (row n, columns 0..n), n = 0..n_max.
  // Present only when every kappa_n^2 > 0.
  bool has_polynomials = false;
  Eigen::MatrixXd phi, phi_star;
  double residual_I0 = 0.0;     // max |I_{n+1}I_{n-1}/I_n^2 - (1 - r_n rbar_n)|
  double residual_kappa = 0.0;  // max |kappa_n^2 - kappa_{n-1}^2 - phi_n(0) phibar_n(0)|

  double kappa(int n) const { return std::sqrt(kappa_sq(n)); }
};

// Ladders through n_max+1, reflection coefficients and polynomial tables.
// Throws SingularError if some I_n[w] vanishes.
BopsState bops_ladder(const MomentTable<double>& moments, int n_max);

// Ladder for the Ising symbol with moments to the decay length.
BopsState ising_bops(Phase phase, double t, int n_max);

std::complex<double> bops_phi(const BopsState& s, int n, std::complex<double> z);
std::complex<double> bops_phi_star(const BopsState& s, int n, std::complex<double> z);
// phibar_n(z): the polynomial with coefficients read off phi*_n reversed.
std::complex<double> bops_phibar(const BopsState& s, int n, std::complex<double> z);

struct BopsValues {
  std::complex<double> phi, phi_star, psi, psi_star, eps, eps_star;
};

// Polynomials by the upward recurrence; psi, eps by the Cauchy-type integrals
// over the circle (trapezoid). Refuses |z| within 0.05 of the unit circle.
BopsValues bops_eval(const BopsState& s, int n, std::complex<double> z);

// Caratheodory function F(z) by the circle integral (|z| != 1).
std::complex<double> caratheodory(const BopsState& s, std::complex<double> z);

// eps_n and eps*_n from the moment Laurent series (inside or outside the
// circle, including points close to it).
void associated_series(const BopsState& s, int n, std::complex<double> z,
                       std::complex<double>& eps, std::complex<double>& eps_star);

struct JumpResidual {
  double phi = 0.0;       // max |w phi + eps^>/2 - lambda^2 eps^</2|
  double phi_star = 0.0;  // max |w phi* - eps*^>/2 + lambda^2 eps*^</2|
  double extrapolation_spread = 0.0;
  double max() const { return phi > phi_star ? phi : phi_star; }
};

// Boundary values at radii 1 -/+ delta, delta = 1e-3, 5e-4, 2.5e-4, with
// Richardson extrapolation to delta = 0.
JumpResidual jump_residual(const BopsState& s, int n, int circle_points, double lambda = 1.0,
                           Diagnostics* diag = nullptr);

// Ladder data of z^{dir} w from that of w. Window shrinks by one index.
BopsState cug_transform(const BopsState& s, int direction);

// 2x2 transfer matrix K_n(z) with Y_{n+1} = K_n Y_n.
Eigen::Matrix2cd transfer_matrix(const BopsState& s, int n, std::complex<double> z);

}  // namespace isingff
