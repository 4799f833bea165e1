#include "isingff/model.hpp"

#include <cmath>

#include "isingff/errors.hpp"

namespace isingff {

std::string to_string(Phase phase) { return phase == Phase::Low ? "low" : "high"; }

Phase parse_phase(const std::string& s) {
  if (s == "low") return Phase::Low;
  if (s == "high") return Phase::High;
  throw DomainError("phase must be 'low' or 'high', got '" + s + "'");
}

void ModelPoint::validate() const {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("t must satisfy 0 <= t < 1");
  if (n < 0) throw DomainError("n must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 0");
}

std::complex<double> ising_weight(Phase phase, double t, std::complex<double> z) {
  const double s = std::sqrt(t);
  const std::complex<double> inner = std::sqrt(1.0 - s / z);
  const std::complex<double> outer = std::sqrt(1.0 - s * z);
  if (phase == Phase::Low) return inner / outer;
  return -outer / (z * inner);
}

ComplexSymbol ising_symbol(Phase phase, double t) {
  return [phase, t](double theta) { return ising_weight(phase, t, std::polar(1.0, theta)); };
}

int moment_decay_length(double t, double tol) {
  if (t <= 0.0) return 1;
  const double s = std::sqrt(t);
  return static_cast<int>(std::ceil(std::log(tol) / std::log(s))) + 2;
}

MomentTable<double> ising_moments(Phase phase, double t, int k_max) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("ising_moments: t must satisfy 0 <= t < 1");
  // Trapezoid aliasing error ~ s^M; the symbol has a square-root singularity
  // at z = s and z = 1/s.
  int M = 64;
  const int need = std::max(4 * k_max, 2 * k_max + moment_decay_length(t, 1e-19));
  while (M < need) M *= 2;
  return real_moments(circle_moments(ising_symbol(phase, t), k_max, M));
}

}  // namespace isingff
