#pragma once

// Real special functions: Gauss 2F1, Appell F1, complete/incomplete elliptic
// integrals, Jacobi elliptic functions and Jacobi theta functions.
//
// Elliptic functions use the PARAMETER convention throughout: m = k^2, so
// K(m) = (pi/2) 2F1(1/2,1/2;1;m). The model parameter t is passed directly
// as m. There is no modulus-convention API.

namespace isingff::specfun {

struct HypergeometricArgs {
  double a = 0, b = 0, c = 1, z = 0;
};

// 2F1(a,b;c;z) for z in (-inf, 1]. With `regularized` the result is
// 2F1/Gamma(c), finite for every real c. Throws DomainError for z > 1 and
// DivergenceError at z = 1 when c - a - b <= 0.
double gauss_2f1(const HypergeometricArgs& args, bool regularized = false);

inline double hyp2f1(double a, double b, double c, double z) {
  return gauss_2f1({a, b, c, z}, false);
}
inline double hyp2f1_regularized(double a, double b, double c, double z) {
  return gauss_2f1({a, b, c, z}, true);
}

// Pochhammer symbol (a)_k.
double pochhammer(double a, int k);

// Appell F1(alpha; beta, beta'; gamma; x, y). Double series for
// max(|x|,|y|) < 1, otherwise the Euler integral when alpha > 0 and
// gamma - alpha > 0 and x, y < 1.
double appell_f1(double alpha, double beta, double beta_p, double gamma, double x, double y);

double appell_f1_series(double alpha, double beta, double beta_p, double gamma, double x,
                        double y);

// Euler integral
//   Gamma(g)/(Gamma(a)Gamma(g-a)) int_0^1 u^(a-1) (1-u)^(g-a-1) (1-xu)^-b (1-yu)^-b' du
// by a q-point Gauss-Jacobi rule.
double appell_f1_integral(double alpha, double beta, double beta_p, double gamma, double x,
                          double y, int q = 64);

struct EllipticParameter {
  double m = 0;
};

struct CompleteElliptic {
  double K = 0, E = 0;
};

CompleteElliptic elliptic_complete(EllipticParameter m);

// Carlson symmetric integrals.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

// Incomplete integrals of the first and second kind, any real phi.
double elliptic_f(double phi, EllipticParameter m);
double elliptic_e(double phi, EllipticParameter m);

struct JacobiValues {
  double sn = 0, cn = 1, dn = 1, am = 0;
  double E_incomplete = 0;  // E(am(z), m)
  double Z = 0;             // Jacobi zeta: E(am(z), m) - (E(m)/K(m)) z
};

JacobiValues jacobi_suite(double z, EllipticParameter m);

// Nome q = exp(-pi K(1-m)/K(m)), m in (0,1).
double elliptic_nome(EllipticParameter m);

// Jacobi theta function theta_nu(x | q(m)), nu = 1..4.
double theta_nome(int nu, double x, EllipticParameter m);
double theta_q(int nu, double x, double q);

}  // namespace isingff::specfun
