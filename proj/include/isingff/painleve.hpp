#pragma once

#include <string>

#include "isingff/errors.hpp"
#include "isingff/model.hpp"

namespace isingff {

enum class SigmaRoute { Toeplitz, DiscreteFredholm };

std::string to_string(SigmaRoute r);

struct SigmaSample {
  double t = 0.0;
  int n = 0;
  double lambda = 0.0;
  double sigma = 0.0, dsigma = 0.0, d2sigma = 0.0;
  double lhs = 0.0, rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
  bool conjecture = false;  // lambda != 1: equation not proven there
};

// Residual of
//   (t(t-1) s'')^2 = n^2 ((t-1) s' - s)^2 - 4 s' ((t-1) s' - s - 1/4)(t s' - s)
// with s = t(t-1) d/dt log C + shift, derivatives of log C from 5-point
// central stencils (the third derivative is second order in h).
//   Toeplitz route: C is the correlation (moment determinant at lambda = 1,
//     (1-t)^{1/4} times the discrete Fredholm value otherwise); shift -t/4
//     (low) or -1/4 (high).
//   DiscreteFredholm route: C = det[1 + lambda^2 G]_n with no shift (low);
//     the high-phase bordered minor takes shift (t-1)/4, which is the same
//     sigma as the correlation.
SigmaSample sigma_residual(const ModelPoint& point, SigmaRoute route, double h = 1e-3);

// log C at the point (exposed for tests).
double sigma_log_value(const ModelPoint& point, SigmaRoute route);

}  // namespace isingff
