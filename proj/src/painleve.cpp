#include "isingff/painleve.hpp"

#include <cmath>

#include "isingff/scattering.hpp"
#include "isingff/toeplitz_bops.hpp"

namespace isingff {

std::string to_string(SigmaRoute r) {
  return r == SigmaRoute::Toeplitz ? "toeplitz" : "fredholm-disc";
}

double sigma_log_value(const ModelPoint& p, SigmaRoute route) {
  double c;
  if (route == SigmaRoute::Toeplitz) {
    if (p.lambda == 1.0) {
      const int k_max = p.n + 2 + moment_decay_length(p.t, 1e-18);
      c = toeplitz_det(ising_moments(p.phase, p.t, k_max), p.n, 0);
    } else {
      c = std::pow(1.0 - p.t, 0.25) * fredholm_disc(p).value;
    }
  } else {
    c = fredholm_disc(p).value;
  }
  if (!(c > 0.0)) throw DomainError("sigma_residual: route value must be positive for log C");
  return std::log(c);
}

SigmaSample sigma_residual(const ModelPoint& point, SigmaRoute route, double h) {
  point.validate();
  const double t = point.t;
  if (!(h > 0.0) || t - 2 * h <= 0.0 || t + 2 * h >= 1.0)
    throw DomainError("sigma_residual: stencil t +- 2h must stay inside (0,1)");
  // log C = a log t + b log(1-t) + smooth; the log terms are differentiated
  // analytically so the stencils only see the smooth remainder.
  const bool high = point.phase == Phase::High;
  const double a = high ? 0.5 * point.n : 0.0;
  const double b = 0.0;
  auto singular = [&](double u) { return a * std::log(u) + b * std::log1p(-u); };
  double f[5];
  for (int k = -2; k <= 2; ++k) {
    ModelPoint q = point;
    q.t = t + k * h;
    f[k + 2] = sigma_log_value(q, route) - singular(q.t);
  }
  const double u = 1.0 - t;
  const double L1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h) + a / t - b / u;
  const double L2 =
      (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h) - a / (t * t) - b / (u * u);
  const double L3 =
      (-f[0] + 2 * f[1] - 2 * f[3] + f[4]) / (2 * h * h * h) + 2 * a / (t * t * t) - 2 * b / (u * u * u);

  double shift = 0.0, dshift = 0.0;
  if (route == SigmaRoute::Toeplitz) {
    if (high) shift = -0.25;
    else shift = -0.25 * t, dshift = -0.25;
  } else if (high) {
    shift = 0.25 * (t - 1.0), dshift = 0.25;
  }
  SigmaSample s;
  s.t = t;
  s.n = point.n;
  s.lambda = point.lambda;
  s.conjecture = point.lambda != 1.0;
  s.sigma = t * (t - 1) * L1 + shift;
  s.dsigma = (2 * t - 1) * L1 + t * (t - 1) * L2 + dshift;
  s.d2sigma = 2 * L1 + 2 * (2 * t - 1) * L2 + t * (t - 1) * L3;
  const double n = point.n;
  const double A = (t - 1) * s.dsigma - s.sigma;
  const double lhs_root = t * (t - 1) * s.d2sigma;
  s.lhs = lhs_root * lhs_root;
  s.rhs = n * n * A * A - 4 * s.dsigma * (A - 0.25) * (t * s.dsigma - s.sigma);
  s.residual = s.lhs - s.rhs;
  return s;
}

}  // namespace isingff
