#include "isingff/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "isingff/errors.hpp"
#include "isingff/quad.hpp"

namespace isingff::specfun {

namespace {

constexpr int kMaxTerms = 200000;
constexpr double kSeriesTol = 1e-17;

bool nonpositive_integer(double c, int& N) {
  double r = std::round(c);
  if (r <= 0 && std::abs(c - r) < 1e-12) {
    N = static_cast<int>(-r);
    return true;
  }
  return false;
}

// 1/Gamma(x), zero at the poles, no overflow for large x.
double rgamma(double x) {
  int N;
  if (nonpositive_integer(x, N)) return 0.0;
  if (x < 170.0) return 1.0 / std::tgamma(x);
  return std::exp(-std::lgamma(x));
}

// Maclaurin series, |z| < 1. The tail after a term with ratio r <= rb < 1 is
// bounded by |term| rb / (1 - rb).
double series_2f1(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    double rb = std::max(std::abs(ratio), std::abs(z));
    if (rb < 1.0 && std::abs(term) * rb / (1.0 - rb) <= kSeriesTol * std::abs(sum)) return sum;
  }
  throw AccuracyError("2F1 series did not converge (a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ", c=" + std::to_string(c) +
                      ", z=" + std::to_string(z) + ")");
}

// 2F1 for c not a non-positive integer and z < 1.
double plain_2f1(double a, double b, double c, double z) {
  if (z == 0.0) return 1.0;
  if (z < -0.5) {
    // Pfaff: maps (-inf,-1/2) into (1/3, 1).
    return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, z / (z - 1.0));
  }
  return series_2f1(a, b, c, z);
}

}  // namespace

double pochhammer(double a, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= a + j;
  return p;
}

double gauss_2f1(const HypergeometricArgs& args, bool regularized) {
  const double a = args.a, b = args.b, c = args.c, z = args.z;
  if (!std::isfinite(z) || z > 1.0) throw DomainError("2F1: argument z must satisfy z <= 1");
  int N;
  const bool pole = nonpositive_integer(c, N);
  if (pole && !regularized)
    throw DomainError("2F1: c is a non-positive integer; use the regularized variant");

  if (z == 1.0) {
    if (c - a - b <= 0.0) throw DivergenceError("2F1: divergent at z = 1 (c - a - b <= 0)");
    double val = std::tgamma(c - a - b) * rgamma(c - a) * rgamma(c - b);
    return regularized ? val : val * std::tgamma(c);
  }
  if (z == 0.0) return regularized ? rgamma(c) : 1.0;

  if (pole) {
    // lim_{c -> -N} 2F1/Gamma(c): the series starts at k = N+1.
    double pre = pochhammer(a, N + 1) * pochhammer(b, N + 1) / std::tgamma(N + 2.0) *
                 std::pow(z, N + 1);
    if (pre == 0.0) return 0.0;
    return pre * plain_2f1(a + N + 1, b + N + 1, N + 2.0, z);
  }
  double val = plain_2f1(a, b, c, z);
  return regularized ? val * rgamma(c) : val;
}

double appell_f1_series(double alpha, double beta, double beta_p, double gamma, double x,
                        double y) {
  if (!(std::max(std::abs(x), std::abs(y)) < 1.0))
    throw DomainError("Appell F1 series requires max(|x|,|y|) < 1");
  int N;
  if (nonpositive_integer(gamma, N)) throw DomainError("Appell F1: gamma is a non-positive integer");

  double total = 0.0, row_coef = 1.0;
  int quiet_rows = 0;
  for (int m = 0; m < kMaxTerms; ++m) {
    if (m > 0) row_coef *= (alpha + m - 1) * (beta + m - 1) / ((gamma + m - 1) * m) * x;
    if (row_coef == 0.0) break;
    // Row m: row_coef * 2F1(alpha+m, beta'; gamma+m; y), summed term by term.
    double term = row_coef, row = row_coef;
    for (int k = 0; k < kMaxTerms; ++k) {
      double ratio = (alpha + m + k) * (beta_p + k) / ((gamma + m + k) * (k + 1.0)) * y;
      term *= ratio;
      row += term;
      if (term == 0.0) break;
      double rb = std::max(std::abs(ratio), std::abs(y));
      if (rb < 1.0 && std::abs(term) * rb / (1.0 - rb) <= kSeriesTol * std::abs(row)) break;
      if (k == kMaxTerms - 1) throw AccuracyError("Appell F1 inner series did not converge");
    }
    total += row;
    double rx = std::abs(x);
    if (std::abs(row) * std::max(rx, 1e-300) / (1.0 - rx) <= kSeriesTol * std::abs(total) ||
        std::abs(row) == 0.0) {
      if (++quiet_rows >= 2) return total;
    } else {
      quiet_rows = 0;
    }
  }
  if (quiet_rows > 0) return total;
  throw AccuracyError("Appell F1 outer series did not converge");
}

double appell_f1_integral(double alpha, double beta, double beta_p, double gamma, double x,
                          double y, int q) {
  if (!(alpha > 0.0 && gamma - alpha > 0.0 && x < 1.0 && y < 1.0))
    throw DomainError("Appell F1 integral needs alpha > 0, gamma - alpha > 0, x,y < 1");
  // Weight u^(alpha-1) (1-u)^(gamma-alpha-1) is absorbed into the rule.
  QuadRule rule = gauss_jacobi_rule(q, gamma - alpha - 1.0, alpha - 1.0);
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    double u = rule.nodes(i);
    s += rule.weights(i) * std::pow(1.0 - x * u, -beta) * std::pow(1.0 - y * u, -beta_p);
  }
  double lognorm = std::lgamma(gamma) - std::lgamma(alpha) - std::lgamma(gamma - alpha);
  return s * std::exp(lognorm);
}

double appell_f1(double alpha, double beta, double beta_p, double gamma, double x, double y) {
  if (std::max(std::abs(x), std::abs(y)) < 1.0)
    return appell_f1_series(alpha, beta, beta_p, gamma, x, y);
  if (alpha > 0.0 && gamma - alpha > 0.0 && x < 1.0 && y < 1.0)
    return appell_f1_integral(alpha, beta, beta_p, gamma, x, y, 128);
  throw DomainError("Appell F1: arguments outside the series and integral domains");
}

CompleteElliptic elliptic_complete(EllipticParameter p) {
  const double m = p.m;
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("elliptic parameter m must lie in [0,1)");
  if (m == 1.0) throw DivergenceError("K(m) diverges at m = 1");
  // AGM with the c_n sequence (Abramowitz & Stegun 17.6).
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  double weight = 0.5, sum = 0.5 * c * c;
  for (int i = 0; i < 64; ++i) {
    double an = 0.5 * (a + b);
    double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * cn * cn;
    if (std::abs(cn) <= 1e-15 * a) break;  // next term is O(cn^2); looping on would add round-off
  }
  CompleteElliptic out;
  out.K = std::numbers::pi / (2.0 * a);
  out.E = out.K * (1.0 - sum);
  return out;
}

double carlson_rf(double x, double y, double z) {
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, y + z, z + x}) == 0.0)
    throw DomainError("carlson_rf: invalid arguments");
  double mu = 0, dx = 0, dy = 0, dz = 0;
  for (int i = 0; i < 200; ++i) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = (x + y + z) / 3.0;
    dx = (mu - x) / mu;
    dy = (mu - y) / mu;
    dz = (mu - z) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 0.0008) break;
  }
  double e2 = dx * dy - dz * dz;
  double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  if (std::min(x, y) < 0.0 || x + y == 0.0 || z <= 0.0)
    throw DomainError("carlson_rd: invalid arguments");
  double sum = 0.0, fac = 1.0;
  double ave = 0, dx = 0, dy = 0, dz = 0;
  for (int i = 0; i < 200; ++i) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    ave = 0.2 * (x + y + 3.0 * z);
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 0.0005) break;
  }
  const double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
  const double c5 = 0.25 * c3, c6 = 1.5 * c4;
  double ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
  return 3.0 * sum +
         fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

namespace {

// phi = j*pi + r with r in [-pi/2, pi/2].
void reduce_phase(double phi, double& j, double& r) {
  j = std::round(phi / std::numbers::pi);
  r = phi - j * std::numbers::pi;
}

}  // namespace

double elliptic_f(double phi, EllipticParameter m) {
  if (!(m.m >= 0.0 && m.m < 1.0)) throw DomainError("elliptic_f: m must lie in [0,1)");
  double j, r;
  reduce_phase(phi, j, r);
  double s = std::sin(r), c = std::cos(r);
  double val = s * carlson_rf(c * c, 1.0 - m.m * s * s, 1.0);
  if (j != 0.0) val += 2.0 * j * elliptic_complete(m).K;
  return val;
}

double elliptic_e(double phi, EllipticParameter m) {
  if (!(m.m >= 0.0 && m.m < 1.0)) throw DomainError("elliptic_e: m must lie in [0,1)");
  double j, r;
  reduce_phase(phi, j, r);
  double s = std::sin(r), c = std::cos(r);
  double x = c * c, y = 1.0 - m.m * s * s;
  double val = s * carlson_rf(x, y, 1.0) - m.m / 3.0 * s * s * s * carlson_rd(x, y, 1.0);
  if (j != 0.0) val += 2.0 * j * elliptic_complete(m).E;
  return val;
}

JacobiValues jacobi_suite(double z, EllipticParameter p) {
  const double m = p.m;
  if (!(m >= 0.0 && m < 1.0)) throw DomainError("jacobi_suite: m must lie in [0,1)");
  JacobiValues v;
  // Descending Landen / AGM scheme (Abramowitz & Stegun 16.4).
  std::array<double, 64> a{}, c{};
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int N = 0;
  while (std::abs(c[N]) > 1e-16 && N < 63) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(a[N] * z, N);
  for (int i = N; i >= 1; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  v.am = phi;
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  v.dn = std::sqrt(1.0 - m * v.sn * v.sn);
  v.E_incomplete = elliptic_e(phi, p);
  CompleteElliptic ke = elliptic_complete(p);
  v.Z = v.E_incomplete - ke.E / ke.K * z;
  return v;
}

double elliptic_nome(EllipticParameter m) {
  if (!(m.m > 0.0 && m.m < 1.0)) throw DomainError("elliptic_nome: m must lie in (0,1)");
  double K = elliptic_complete(m).K;
  double Kp = elliptic_complete({1.0 - m.m}).K;
  return std::exp(-std::numbers::pi * Kp / K);
}

double theta_q(int nu, double x, double q) {
  if (nu < 1 || nu > 4) throw DomainError("theta: index must be 1..4");
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("theta: nome must lie in [0,1)");
  if (q == 0.0) return (nu >= 3) ? 1.0 : 0.0;
  const double lq = std::log(q);
  double sum = 0.0;
  if (nu <= 2) {
    for (int n = 0; n < 10000; ++n) {
      double e = (n + 0.5) * (n + 0.5) * lq;
      double qn = std::exp(e);
      double trig = (nu == 1) ? ((n % 2) ? -1.0 : 1.0) * std::sin((2 * n + 1) * x)
                              : std::cos((2 * n + 1) * x);
      sum += qn * trig;
      if (qn < 1e-17 * std::max(std::abs(sum), 1e-300) || qn < 1e-300) break;
    }
    return 2.0 * sum;
  }
  for (int n = 1; n < 10000; ++n) {
    double qn = std::exp(double(n) * n * lq);
    double sign = (nu == 4 && (n % 2)) ? -1.0 : 1.0;
    sum += sign * qn * std::cos(2.0 * n * x);
    if (qn < 1e-17) break;
  }
  return 1.0 + 2.0 * sum;
}

double theta_nome(int nu, double x, EllipticParameter m) { return theta_q(nu, x, elliptic_nome(m)); }

}  // namespace isingff::specfun
