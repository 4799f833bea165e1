#include "isingff/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "isingff/errors.hpp"
#include "isingff/linalg.hpp"
#include "isingff/specfun.hpp"

namespace isingff {

namespace {

using specfun::hyp2f1;
using specfun::hyp2f1_regularized;

const double kLogSqrtPi = 0.5 * std::log(std::numbers::pi);

void check_t(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("t must satisfy 0 <= t < 1");
}

// Depth below which diagonal entries of G are negligible: t^(L+1) < 1e-18.
int diagonal_depth(double t) {
  if (t <= 0.0) return 0;
  return static_cast<int>(std::ceil(std::log(1e-18) / std::log(t)));
}

// Per-index factors of the off-diagonal closed form. With
//   A(j) = 2F1~(1/2, j+3/2; j+1; t),  B(j) = 2F1~(1/2, j+1/2; j+2; t)
// (regularized), P(j) = (-1/2)_{j+1}, Q(j) = (1/2)_{j+1}:
//   a = P t^{j/2} A,  b = P t^{j/2} B,  c = Q t^{j/2} B,  d = Q t^{j/2} A
// and G_{l,m} = -t (a_l c_m - b_l d_m) / (l - m).
struct IndexFactors {
  double a = 0, b = 0, c = 0, d = 0;
};

IndexFactors index_factors(int j, double t) {
  IndexFactors f;
  if (j >= 0) {
    // Gamma ratios in log form; 1/Gamma(-1/2) = -1/(2 sqrt(pi)), 1/Gamma(1/2) = 1/sqrt(pi).
    const double half_log_t = 0.5 * j * std::log(t);
    const double fa = hyp2f1(0.5, j + 1.5, j + 1.0, t);
    const double fb = hyp2f1(0.5, j + 0.5, j + 2.0, t);
    const double lp = std::lgamma(j + 0.5) + half_log_t - std::log(2.0) - kLogSqrtPi;
    const double lq = std::lgamma(j + 1.5) + half_log_t - kLogSqrtPi;
    f.a = -std::exp(lp - std::lgamma(j + 1.0)) * fa;
    f.b = -std::exp(lp - std::lgamma(j + 2.0)) * fb;
    f.c = std::exp(lq - std::lgamma(j + 2.0)) * fb;
    f.d = std::exp(lq - std::lgamma(j + 1.0)) * fa;
    return f;
  }
  const double tj = std::pow(t, 0.5 * j);
  const double P = std::tgamma(j + 0.5) / std::tgamma(-0.5);
  const double Q = std::tgamma(j + 1.5) / std::tgamma(0.5);
  const double A = hyp2f1_regularized(0.5, j + 1.5, j + 1.0, t);
  const double B = hyp2f1_regularized(0.5, j + 0.5, j + 2.0, t);
  f.a = P * tj * A;
  f.b = P * tj * B;
  f.c = Q * tj * B;
  f.d = Q * tj * A;
  return f;
}

double offdiag(int l, int m, const IndexFactors& fl, const IndexFactors& fm, double t) {
  return -t * (fl.a * fm.c - fl.b * fm.d) / double(l - m);
}

// Diagonal G_{j,j} for j in [lo, hi] by G_{l,l} = G_{l+1,l+1} - Fbar_{|l+1|} F_{|l+1|}.
std::vector<double> diagonal_block(int lo, int hi, double t) {
  std::vector<double> diag(hi - lo + 1, 0.0);
  if (t == 0.0) {
    for (int j = lo; j <= hi; ++j) diag[j - lo] = (j <= -1) ? -1.0 : 0.0;
    return diag;
  }
  const int top = std::max(hi, diagonal_depth(t));
  double g = 0.0;  // G_{top+1, top+1}
  for (int l = top; l >= lo; --l) {
    const int k = std::abs(l + 1);
    g -= scattering_Fbar(k, t) * scattering_F(k, t);
    if (l <= hi) diag[l - lo] = g;
  }
  return diag;
}

}  // namespace

double scattering_F(int m, double t) {
  check_t(t);
  const int j = std::abs(m);
  if (t == 0.0) return j == 0 ? 1.0 : 0.0;
  const double lp = std::lgamma(j + 0.5) - kLogSqrtPi - std::lgamma(j + 1.0) + 0.5 * j * std::log(t);
  return std::exp(lp) * hyp2f1(0.5, j + 0.5, j + 1.0, t);
}

double scattering_Fbar(int m, double t) {
  check_t(t);
  const int j = std::abs(m);
  if (t == 0.0) return j == 0 ? 1.0 : 0.0;
  // Gamma(j - 1/2) is negative only at j = 0.
  const double sign = (j == 0) ? 1.0 : -1.0;
  const double lp = std::lgamma(j - 0.5) - std::log(2.0) - kLogSqrtPi - std::lgamma(j + 1.0) +
                    0.5 * j * std::log(t);
  return sign * std::exp(lp) * hyp2f1(-0.5, j - 0.5, j + 1.0, t);
}

void fourier_coeffs_quadrature(double t, int m_max, Eigen::VectorXd& F, Eigen::VectorXd& Fbar) {
  check_t(t);
  int M = 64;
  const int need = std::max(4 * m_max, 2 * m_max + moment_decay_length(t, 1e-19));
  while (M < need) M *= 2;
  auto S = [t](double th) { return scattering_function(std::polar(1.0, th), t); };
  auto Sinv = [t](double th) { return 1.0 / scattering_function(std::polar(1.0, th), t); };
  // F_m = int z^m S, i.e. the moment of index -m.
  MomentTable<double> ws = real_moments(circle_moments(S, m_max, M));
  MomentTable<double> wi = real_moments(circle_moments(Sinv, m_max, M));
  F.resize(m_max + 1);
  Fbar.resize(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    F(m) = ws(-m);
    Fbar(m) = wi(m);
  }
}

ScatteringData fourier_coeffs(double t, int m_max) {
  check_t(t);
  if (m_max < 0) throw DomainError("fourier_coeffs: m_max must be >= 0");
  ScatteringData d;
  d.t = t;
  d.m_max = m_max;
  d.F.resize(m_max + 1);
  d.Fbar.resize(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    d.F(m) = scattering_F(m, t);
    d.Fbar(m) = scattering_Fbar(m, t);
  }
  Eigen::VectorXd Fq, Fbq;
  fourier_coeffs_quadrature(t, m_max, Fq, Fbq);
  d.route_gap = std::max((d.F - Fq).cwiseAbs().maxCoeff(), (d.Fbar - Fbq).cwiseAbs().maxCoeff());
  if (d.route_gap > 1e-9)
    throw AccuracyError("fourier_coeffs: closed form and quadrature differ by " +
                        std::to_string(d.route_gap));
  return d;
}

std::complex<double> jost(std::complex<double> z, double t, JostSide side) {
  check_t(t);
  const double s = std::sqrt(t);
  if (side == JostSide::Interior) {
    const std::complex<double> u = 1.0 - s * z;
    if (u.imag() == 0.0 && u.real() <= 0.0) throw BranchError("f_+: z on the cut [1/s, inf)");
    return std::sqrt(u);
  }
  if (z == 0.0) throw BranchError("f_-: z = 0");
  const std::complex<double> u = 1.0 - s / z;
  if (u.imag() == 0.0 && u.real() <= 0.0) throw BranchError("f_-: z on the cut (0, s]");
  return 1.0 / std::sqrt(u);
}

std::complex<double> scattering_function(std::complex<double> z, double t) {
  return jost(z, t, JostSide::Exterior) / jost(z, t, JostSide::Interior);
}

double g_entry(int l, int m, double t) {
  check_t(t);
  if (l == m) return diagonal_block(l, l, t)[0];
  if (t == 0.0) return 0.0;
  return offdiag(l, m, index_factors(l, t), index_factors(m, t), t);
}

namespace {

double g_series(int l, int m, double t, bool swap) {
  check_t(t);
  if (t == 0.0) {
    // Only terms with l+k = m+k = 0 survive.
    return (l == m && l <= -1) ? -1.0 : 0.0;
  }
  const int kmax = std::max({-l, -m, 0}) + 2 * diagonal_depth(t) + 8;
  double s = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const int i = std::abs(l + k), j = std::abs(m + k);
    s -= swap ? scattering_F(i, t) * scattering_Fbar(j, t) : scattering_Fbar(i, t) * scattering_F(j, t);
  }
  return s;
}

}  // namespace

double g_entry_series(int l, int m, double t) { return g_series(l, m, t, false); }
double gbar_entry_series(int l, int m, double t) { return g_series(l, m, t, true); }

KernelMatrix build_kernel_matrix(int n_start, int N, double t) {
  check_t(t);
  if (N < 0) throw DomainError("build_kernel_matrix: N must be >= 0");
  KernelMatrix km;
  km.n_start = n_start;
  km.N = N;
  km.t = t;
  km.G = Eigen::MatrixXd::Zero(N, N);
  if (N == 0) return km;
  std::vector<double> diag = diagonal_block(n_start, n_start + N - 1, t);
  for (int i = 0; i < N; ++i) km.G(i, i) = diag[i];
  if (t == 0.0) return km;
  std::vector<IndexFactors> f(N);
  for (int i = 0; i < N; ++i) f[i] = index_factors(n_start + i, t);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) km.G(i, j) = offdiag(n_start + i, n_start + j, f[i], f[j], t);
  return km;
}

int default_truncation(int n, double t) {
  if (t <= 0.0) return 8;
  const int N = static_cast<int>(std::ceil(std::log(1e-16) / std::log(t))) - n;
  return std::clamp(N, 8, 512);
}

namespace {

double det_window(const KernelMatrix& km, double lambda, int offset) {
  const int size = km.N - offset;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size) +
                      lambda * lambda * km.G.bottomRightCorner(size, size);
  return determinant(a);
}

double first_zero(const KernelMatrix& km) {
  double best = std::numeric_limits<double>::infinity();
  if (km.N == 0) return best;
  Eigen::EigenSolver<Eigen::MatrixXd> es(km.G, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> g = es.eigenvalues()(i);
    if (g.real() < 0.0 && std::abs(g.imag()) <= 1e-12 * std::abs(g))
      best = std::min(best, std::sqrt(-1.0 / g.real()));
  }
  return best;
}

void check_singular(const KernelMatrix& km, double lambda) {
  const double zero = first_zero(km);
  if (std::abs(lambda) >= zero)
    throw SingularError("det[1 + lambda^2 G] vanishes at lambda = " + std::to_string(zero) +
                        " (window starting at " + std::to_string(km.n_start) + ")");
}

// Bordered determinant with first row lambda * F_{c+1} (or Fbar) over the
// window of km, remaining rows from 1 + lambda^2 G (or its transpose).
double bordered(const KernelMatrix& km, double lambda, bool bar) {
  const int N = km.N;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(N, N) +
                      lambda * lambda * (bar ? Eigen::MatrixXd(km.G.transpose()) : km.G);
  for (int j = 0; j < N; ++j) {
    const int c = km.n_start + j;
    a(0, j) = lambda * (bar ? scattering_Fbar(c + 1, km.t) : scattering_F(c + 1, km.t));
  }
  return determinant(a);
}

}  // namespace

double fredholm_disc_det(int n, double t, double lambda, int N) {
  if (N <= 0) N = default_truncation(n, t);
  return det_window(build_kernel_matrix(n, N, t), lambda, 0);
}

double first_determinant_zero(int n, double t, int N) {
  if (N <= 0) N = default_truncation(n, t);
  return first_zero(build_kernel_matrix(n, N, t));
}

namespace {

double disc_value(Phase phase, int n, double t, double lambda, int N, bool check) {
  if (phase == Phase::Low) {
    KernelMatrix km = build_kernel_matrix(n, N, t);
    if (check) check_singular(km, lambda);
    return det_window(km, lambda, 0);
  }
  // r_n(lambda) det_n(lambda) is the bordered numerator at index n-1.
  return bordered(build_kernel_matrix(n - 1, N + 1, t), lambda, false);
}

}  // namespace

DiscreteResult fredholm_disc(const ModelPoint& point, int N) {
  point.validate();
  DiscreteResult res;
  res.N = N > 0 ? N : default_truncation(point.n, point.t);
  res.value = disc_value(point.phase, point.n, point.t, point.lambda, res.N, true);
  const double fine = disc_value(point.phase, point.n, point.t, point.lambda, 2 * res.N, false);
  res.doubling_gap = std::abs(fine - res.value);
  if (res.doubling_gap > 1e-12)
    throw TruncationError("fredholm_disc: N -> 2N moved the determinant by " +
                          std::to_string(res.doubling_gap));
  return res;
}

MarchenkoSolution marchenko_solve(int n, double t, double lambda, int N) {
  check_t(t);
  if (n < -1) throw DomainError("marchenko_solve: n must be >= -1");
  if (N <= 0) N = default_truncation(n, t);
  KernelMatrix km = build_kernel_matrix(n, N, t);
  check_singular(km, lambda);
  const double det_n = det_window(km, lambda, 0);
  const double det_n1 = det_window(km, lambda, 1);
  MarchenkoSolution sol;
  sol.kappa_ratio = det_n1 / det_n;
  sol.r_next = bordered(km, lambda, false) / det_n1;
  sol.rbar_next = bordered(km, lambda, true) / det_n1;
  return sol;
}

MarchenkoSolution marchenko_solve(const ModelPoint& point, int N) {
  point.validate();
  return marchenko_solve(point.n, point.t, point.lambda, N);
}

double toeplitz_from_g(const ModelPoint& point, int N) {
  point.validate();
  const double pre = std::pow(1.0 - point.t, 0.25);
  if (point.phase == Phase::High) return pre * fredholm_disc(point, N).value;
  const double det0 = fredholm_disc_det(0, point.t, point.lambda, N);
  const double I0 = pre * det0;
  return I0 * fredholm_disc_det(point.n, point.t, point.lambda, N) / det0;
}

}  // namespace isingff
