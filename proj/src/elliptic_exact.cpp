#include "isingff/elliptic_exact.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "isingff/specfun.hpp"

namespace isingff {

namespace sf = specfun;

LambdaCoordinates lambda_coordinates(double t, double lambda) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("lambda_coordinates: t must lie in (0,1)");
  if (!(lambda >= -1.0 && lambda <= 1.0)) throw DomainError("lambda_coordinates: lambda must lie in [-1,1]");
  LambdaCoordinates c;
  c.x = std::asin(lambda);
  c.z = 2.0 * sf::elliptic_complete({t}).K / std::numbers::pi * c.x;
  return c;
}

ExactValues exact_values(double t, double lambda) {
  const LambdaCoordinates c = lambda_coordinates(t, lambda);
  const auto [K, E] = sf::elliptic_complete({t});
  const sf::JacobiValues j = sf::jacobi_suite(c.z, {t});
  const double A = j.cn * j.dn + j.sn * j.Z;
  ExactValues v;
  if (std::abs(lambda) == 1.0) {
    // sec x has a simple pole that cancels against A = -(2/pi) E (x - pi/2) + ...
    v.I1_over_I0 = 2.0 * E / std::numbers::pi;
    v.I0_over_Iminus1 = std::numeric_limits<double>::infinity();
  } else {
    const double sec = 1.0 / std::cos(c.x);
    v.I1_over_I0 = sec * A;
    v.I0_over_Iminus1 = sec / A;
  }
  v.r0 = j.sn;
  v.rbar0 = (lambda == 0.0) ? 0.0 : (1.0 + A) * (1.0 - A) / j.sn;
  const double q = sf::elliptic_nome({t});
  const double pre = std::pow(1.0 - t, 0.25);
  v.I0_low = pre * sf::theta_q(4, c.x, q) / sf::theta_q(4, 0.0, q);
  v.I0_high = pre * sf::theta_q(3, 0.0, q) * sf::theta_q(1, c.x, q) /
              (sf::theta_q(2, 0.0, q) * sf::theta_q(4, 0.0, q));
  (void)K;
  return v;
}

std::string to_string(ExactQuantity q) {
  switch (q) {
    case ExactQuantity::I1OverI0: return "I1_over_I0";
    case ExactQuantity::I0OverIminus1: return "I0_over_Iminus1";
    case ExactQuantity::R0: return "r0";
    case ExactQuantity::Rbar0: return "rbar0";
    case ExactQuantity::I0Low: return "I0_low";
    case ExactQuantity::I0High: return "I0_high";
  }
  return "?";
}

ExactQuantity parse_exact_quantity(const std::string& s) {
  for (ExactQuantity q : {ExactQuantity::I1OverI0, ExactQuantity::I0OverIminus1, ExactQuantity::R0,
                          ExactQuantity::Rbar0, ExactQuantity::I0Low, ExactQuantity::I0High})
    if (to_string(q) == s) return q;
  throw DomainError("unknown exact quantity '" + s + "'");
}

double exact_quantity(const ExactValues& v, ExactQuantity q) {
  switch (q) {
    case ExactQuantity::I1OverI0: return v.I1_over_I0;
    case ExactQuantity::I0OverIminus1: return v.I0_over_Iminus1;
    case ExactQuantity::R0: return v.r0;
    case ExactQuantity::Rbar0: return v.rbar0;
    case ExactQuantity::I0Low: return v.I0_low;
    case ExactQuantity::I0High: return v.I0_high;
  }
  return 0.0;
}

std::vector<double> taylor_coefficients(const std::function<double(double)>& f, int order,
                                        double h0, double* spread) {
  if (order < 0 || order > 5) throw DomainError("taylor_coefficients: order must be 0..5");
  constexpr int m = 3;
  constexpr int levels = 4;
  // Interpolating polynomial through f(jh), j = -m..m; coefficient k scales as h^-k.
  Eigen::MatrixXd V(2 * m + 1, 2 * m + 1);
  for (int j = -m; j <= m; ++j)
    for (int k = 0; k <= 2 * m; ++k) V(j + m, k) = std::pow(double(j), k);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(V);

  std::vector<std::vector<double>> table(levels, std::vector<double>(order + 1));
  for (int l = 0; l < levels; ++l) {
    const double h = h0 / double(1 << l);
    Eigen::VectorXd y(2 * m + 1);
    for (int j = -m; j <= m; ++j) y(j + m) = f(j * h);
    const Eigen::VectorXd a = lu.solve(y);
    for (int k = 0; k <= order; ++k) table[l][k] = a(k) / std::pow(h, k);
  }
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) {
    std::vector<double> r(levels);
    for (int l = 0; l < levels; ++l) r[l] = table[l][k];
    double last = 0.0;
    for (int s = 1; s < levels; ++s) {
      const double fac = std::pow(4.0, s);
      for (int l = levels - 1; l >= s; --l) {
        const double nr = (fac * r[l] - r[l - 1]) / (fac - 1.0);
        if (l == levels - 1) last = nr - r[l];
        r[l] = nr;
      }
    }
    out[k] = r[levels - 1];
    if (spread && k == order) *spread = std::abs(last);
  }
  return out;
}

std::vector<double> lambda_series(ExactQuantity which, double t, int order, Diagnostics* diag) {
  if (order < 0 || order > 4) throw DomainError("lambda_series: order must be 0..4");
  double spread = 0.0;
  auto f = [&](double lam) { return exact_quantity(exact_values(t, lam), which); };
  // I0/I-1 has poles at lambda = +-1; keep the widest stencil node at 0.3.
  const double h0 = which == ExactQuantity::I0OverIminus1 ? 0.1 : 0.2;
  auto c = taylor_coefficients(f, order, h0, &spread);
  if (diag && spread > 1e-7)
    diag->warn("lambda_series: Richardson spread " + std::to_string(spread) + " for " + to_string(which));
  return c;
}

}  // namespace isingff
