#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isingff/errors.hpp"

namespace isingff {

// lambda = sin x, z = (2 K(t)/pi) x.
struct LambdaCoordinates {
  double x = 0.0;
  double z = 0.0;
};

LambdaCoordinates lambda_coordinates(double t, double lambda);

// Closed-form n = 0 data in the low-temperature variables. I0_low and I0_high
// include the (1-t)^{1/4} prefactor, so they are the n = 0 correlations.
struct ExactValues {
  double I1_over_I0 = 0.0;      // 1/kappa_0^2
  double I0_over_Iminus1 = 0.0;  // 1/kappa_{-1}^2, +inf at |lambda| = 1
  double r0 = 0.0;
  double rbar0 = 0.0;
  double I0_low = 0.0;
  double I0_high = 0.0;
};

// t in (0,1), lambda in [-1,1]. Negative lambda is accepted so that
// derivative stencils can straddle zero.
ExactValues exact_values(double t, double lambda);

enum class ExactQuantity { I1OverI0, I0OverIminus1, R0, Rbar0, I0Low, I0High };

std::string to_string(ExactQuantity q);
ExactQuantity parse_exact_quantity(const std::string& s);
double exact_quantity(const ExactValues& v, ExactQuantity q);

// Taylor coefficients c_0..c_order of f about 0 from symmetric finite
// differences: a 7-point interpolating stencil at steps h0, h0/2, h0/4,
// h0/8 and Richardson extrapolation in h^2. `spread` receives the last
// Richardson correction of the highest coefficient.
std::vector<double> taylor_coefficients(const std::function<double(double)>& f, int order,
                                        double h0 = 0.2, double* spread = nullptr);

// Coefficients of lambda^0..lambda^order (order <= 4) of an exact_values output.
std::vector<double> lambda_series(ExactQuantity which, double t, int order,
                                  Diagnostics* diag = nullptr);

}  // namespace isingff
