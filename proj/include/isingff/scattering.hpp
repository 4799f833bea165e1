#pragma once

#include <Eigen/Dense>
#include <complex>

#include "isingff/model.hpp"

namespace isingff {

// Fourier coefficients of the scattering function S = f_-/f_+ (F) and of 1/S
// (Fbar) for the low-temperature Ising symbol. Both depend on |m| only.
double scattering_F(int m, double t);
double scattering_Fbar(int m, double t);

struct ScatteringData {
  double t = 0.0;
  int m_max = 0;
  Eigen::VectorXd F;     // F_0..F_{m_max}
  Eigen::VectorXd Fbar;  // Fbar_0..Fbar_{m_max}
  double route_gap = 0.0;  // closed form vs circle quadrature

  double f(int m) const { return F(std::abs(m)); }
  double fbar(int m) const { return Fbar(std::abs(m)); }
};

// Closed forms, checked against the circle quadrature of S and 1/S; throws
// AccuracyError if the two disagree beyond 1e-9.
ScatteringData fourier_coeffs(double t, int m_max);

// Circle-quadrature route alone (F_0..F_{m_max}, Fbar_0..Fbar_{m_max}).
void fourier_coeffs_quadrature(double t, int m_max, Eigen::VectorXd& F, Eigen::VectorXd& Fbar);

enum class JostSide { Interior, Exterior };

// f_+(z) = (1 - s z)^{1/2} (analytic in |z| < 1/s) and
// f_-(z) = (1 - s/z)^{-1/2} (analytic in |z| > s), s = sqrt(t).
std::complex<double> jost(std::complex<double> z, double t, JostSide side);

std::complex<double> scattering_function(std::complex<double> z, double t);

// G_{l,m} for any integers: off-diagonal closed form with regularized 2F1,
// diagonal by downward recurrence.
double g_entry(int l, int m, double t);

// -sum_{k>=1} Fbar_{|l+k|} F_{|m+k|}, summed directly (test oracle).
double g_entry_series(int l, int m, double t);

// The same sum with F and Fbar exchanged; equals G_{m,l}.
double gbar_entry_series(int l, int m, double t);

struct KernelMatrix {
  int n_start = 0;
  int N = 0;
  double t = 0.0;
  Eigen::MatrixXd G;  // G(i,j) = G_{n_start+i, n_start+j}
};

KernelMatrix build_kernel_matrix(int n_start, int N, double t);

// N = ceil(log(1e-16)/log t) - n clamped to [8, 512].
int default_truncation(int n, double t);

struct DiscreteResult {
  double value = 0.0;
  int N = 0;
  double doubling_gap = 0.0;
};

// Low phase: det[1 + lambda^2 G]_n. High phase: the bordered minor
// r_n(lambda) det[1 + lambda^2 G]_n. N = 0 selects default_truncation.
// Throws TruncationError if N -> 2N moves the value by more than 1e-12, and
// SingularError if lambda reaches the first zero of the determinant.
DiscreteResult fredholm_disc(const ModelPoint& point, int N = 0);

// det[1 + lambda^2 G] over indices n..n+N-1 (n may be negative).
double fredholm_disc_det(int n, double t, double lambda, int N = 0);

// Smallest lambda > 0 with det[1 + lambda^2 G]_n = 0 (infinity if none),
// from the real negative eigenvalues of the truncated G.
double first_determinant_zero(int n, double t, int N = 0);

struct MarchenkoSolution {
  double kappa_ratio = 1.0;  // kappa_inf^2 / kappa_n^2 = det_{n+1} / det_n
  double r_next = 0.0;       // r_{n+1}(lambda)
  double rbar_next = 0.0;    // rbar_{n+1}(lambda)
};

// Bordered-determinant solution of the lambda-extended Marchenko system at
// index n >= -1. lambda may be negative (used by derivative stencils).
MarchenkoSolution marchenko_solve(int n, double t, double lambda, int N = 0);
MarchenkoSolution marchenko_solve(const ModelPoint& point, int N = 0);

// I_n = I_0 det[1+lambda^2 G]_n / det[1+lambda^2 G]_0 with
// I_0 = (1-t)^{1/4} det[1+lambda^2 G]_0.
double toeplitz_from_g(const ModelPoint& point, int N = 0);

}  // namespace isingff
