#pragma once

#include <vector>

#include "isingff/errors.hpp"
#include "isingff/model.hpp"

namespace isingff {

// Largest order served by the direct product rule.
inline constexpr int kMaxDirectOrder = 3;

struct FormFactorValue {
  int p = 0;
  double value = 0.0;
  double est_error = 0.0;  // |value(q) - value(2q)|
};

// f^(2p) (low phase) or f^(2p+1) (high phase) at the point's (n, t); lambda is
// ignored. Low p = 0 is the leading 1. Throws BudgetError for p > 3.
FormFactorValue form_factor(const ModelPoint& point, int p, int q = 24,
                            Diagnostics* diag = nullptr);

// Same integral at a single rule size, no error estimate.
double form_factor_at(const ModelPoint& point, int p, int q);

struct SmallTCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
};

// Leading small-t coefficients: f = c0 t^e (1 + (c1/c0) t + ...), with
// e = p(n+p) (low) or n(p+1/2) + p(p+1) (high).
SmallTCoefficients small_t_coeffs(int n, int p, Phase phase);

// Exponent e of the leading small-t power.
double small_t_exponent(int n, int p, Phase phase);

struct SeriesValue {
  double value = 0.0;
  double tail_estimate = 0.0;  // lambda-weighted t^((p_max+1)(n+p_max+1)) (low)
  double leading_tail = 0.0;   // c0 of the first dropped order times its power
  double est_error = 0.0;      // accumulated quadrature estimates
  std::vector<FormFactorValue> terms;
};

// Low: (1-t)^{1/4} (1 + sum_{p=1}^{p_max} lambda^{2p} f^(2p)).
// High: (1-t)^{1/4} sum_{p=0}^{p_max} lambda^{2p+1} f^(2p+1).
SeriesValue correlation_series(const ModelPoint& point, int p_max = kMaxDirectOrder, int q = 24,
                               Diagnostics* diag = nullptr);

}  // namespace isingff
