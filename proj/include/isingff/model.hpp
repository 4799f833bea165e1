#pragma once

#include <complex>
#include <string>

#include "isingff/quad.hpp"

namespace isingff {

// Low: T < Tc, t = k^-2. High: T > Tc, t = k^2.
enum class Phase { Low, High };

std::string to_string(Phase phase);
Phase parse_phase(const std::string& s);

struct ModelPoint {
  Phase phase = Phase::Low;
  double t = 0.0;
  double lambda = 1.0;
  int n = 0;

  // Throws DomainError unless 0 <= t < 1, n >= 0, lambda >= 0.
  void validate() const;
};

// Diagonal-correlation symbol with s = sqrt(t):
//   low:  w(z) = (1 - s/z)^{1/2} (1 - s z)^{-1/2}
//   high: w(z) = -z^{-1} (1 - s z)^{1/2} (1 - s/z)^{-1/2}
// Principal square roots of each factor give the branch analytic in
// s < |z| < 1/s.
std::complex<double> ising_weight(Phase phase, double t, std::complex<double> z);

ComplexSymbol ising_symbol(Phase phase, double t);

// Real moment table of the Ising symbol, |k| <= k_max, with the trapezoid
// size chosen from the analyticity annulus.
MomentTable<double> ising_moments(Phase phase, double t, int k_max);

// Number of moments beyond which |w_k| < tol (geometric decay s^k).
int moment_decay_length(double t, double tol = 1e-17);

}  // namespace isingff
