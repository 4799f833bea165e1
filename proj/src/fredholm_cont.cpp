#include "isingff/fredholm_cont.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isingff/linalg.hpp"
#include "isingff/specfun.hpp"

namespace isingff {

namespace {

using specfun::appell_f1;

void check_unit(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("kernel: arguments must lie in the open interval (0,1)");
}

void check_t(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("kernel: t must satisfy 0 <= t < 1");
}

// F1(alpha; beta, 1; gamma; t, t x) and its x-derivative of x F.
struct AppellPair {
  double F = 0.0;
  double dxF = 0.0;  // d/dx [x F(x)]
};

AppellPair appell_pair(double alpha, double beta, double gamma, double t, double x) {
  AppellPair p;
  p.F = appell_f1(alpha, beta, 1.0, gamma, t, t * x);
  const double dy = alpha / gamma * appell_f1(alpha + 1.0, beta, 2.0, gamma + 1.0, t, t * x);
  p.dxF = p.F + x * t * dy;
  return p;
}

// [x F(x) - y F(y)] / (x - y) with its diagonal limit.
double divided(double x, const AppellPair& fx, double y, const AppellPair& fy) {
  if (x == y) return fx.dxF;
  return (x * fx.F - y * fy.F) / (x - y);
}

double low_constant(int n) {
  const double pi = std::numbers::pi;
  return std::exp(std::lgamma(n + 0.5) + std::lgamma(0.5) - std::lgamma(n + 2.0)) / (2.0 * pi * pi);
}

double high_constant(int n) {
  return std::exp(std::lgamma(n + 0.5) + std::lgamma(0.5) - std::lgamma(n + 1.0));
}

constexpr double kLowAlpha = 0.5, kLowBeta = -0.5, kHighBeta = 0.5;

AppellPair low_pair(int n, double t, double x) { return appell_pair(n + kLowAlpha, kLowBeta, n + 2.0, t, x); }
AppellPair high_pair(int n, double t, double x) { return appell_pair(n + kLowAlpha, kHighBeta, n + 1.0, t, x); }

double high_A(int n, double t) { return specfun::hyp2f1(n + 0.5, 0.5, n + 1.0, t); }

}  // namespace

double kernel_low(double x, double y, int n, double t) {
  check_unit(x);
  check_unit(y);
  check_t(t);
  if (n < 0) throw DomainError("kernel_low: n must be >= 0");
  if (t == 0.0) return 0.0;
  AppellPair fx = low_pair(n, t, x);
  AppellPair fy = (x == y) ? fx : low_pair(n, t, y);
  const double pre = -low_constant(n) * std::pow(t, n + 1.0) * std::pow(x * y, 0.5 * n + 0.25) *
                     std::pow((1.0 - x) * (1.0 - y) * (1.0 - t * x) * (1.0 - t * y), -0.25);
  return pre * divided(x, fx, y, fy);
}

HighKernel kernel_high(double x, double y, int n, double t, Diagnostics* diag) {
  check_unit(x);
  check_unit(y);
  check_t(t);
  if (n < 0) throw DomainError("kernel_high: n must be >= 0");
  if (diag && t > 0.9) diag->warn("kernel_high: kernels diverge logarithmically as t -> 1");
  const double pi = std::numbers::pi;
  const double c = high_constant(n);
  HighKernel k;
  k.K0 = c * std::pow(t, 0.5 * n) * high_A(n, t);
  if (t == 0.0 && n > 0) return k;  // every component carries a positive power of t
  AppellPair fx = high_pair(n, t, x);
  AppellPair fy = (x == y) ? fx : high_pair(n, t, y);
  k.K1x = -c / pi * std::pow(t, 0.75 * n) * std::pow(x, 0.5 * n - 0.75) *
          std::pow((1.0 - x) * (1.0 - t * x), 0.25) * fx.F;
  k.K2xy = c / (pi * pi) * std::pow(t, double(n)) * std::pow(x * y, 0.5 * n - 0.75) *
           std::pow((1.0 - x) * (1.0 - y) * (1.0 - t * x) * (1.0 - t * y), 0.25) *
           divided(x, fx, y, fy);
  return k;
}

NystromSystem nystrom_system(Phase phase, int n, double t, int q) {
  check_t(t);
  if (n < 0) throw DomainError("nystrom_system: n must be >= 0");
  if (q < 1) throw DomainError("nystrom_system: q must be >= 1");
  NystromSystem sys;
  sys.phase = phase;
  sys.M = Eigen::MatrixXd::Zero(q, q);
  const double pi = std::numbers::pi;
  if (phase == Phase::Low) {
    sys.rule = gauss_jacobi_rule(q, -0.5, n + 0.5);
    if (t == 0.0) return sys;
    std::vector<AppellPair> f(q);
    Eigen::VectorXd s(q);
    const double pre = -low_constant(n) * std::pow(t, n + 1.0);
    for (int i = 0; i < q; ++i) {
      const double x = sys.rule.nodes(i);
      f[i] = low_pair(n, t, x);
      s(i) = std::sqrt(sys.rule.weights(i)) * std::pow(1.0 - t * x, -0.25);
    }
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        sys.M(i, j) = pre * s(i) * s(j) *
                      divided(sys.rule.nodes(i), f[i], sys.rule.nodes(j), f[j]);
    return sys;
  }
  sys.rule = gauss_jacobi_rule(q, 0.5, n + 0.5);
  const double c = high_constant(n);
  const double A = high_A(n, t);
  sys.K0 = c * std::pow(t, 0.5 * n) * A;
  if (t == 0.0) return sys;
  // R = K2 - K1 K1 / K0 divided by the rule weight x^{n+1/2}(1-x)^{1/2}:
  //   c t^n / pi^2 [(1-tx)(1-ty)]^{1/4} {D(x,y) - F(x) F(y) / A} / (x y)
  std::vector<AppellPair> f(q);
  Eigen::VectorXd s(q);
  for (int i = 0; i < q; ++i) {
    const double x = sys.rule.nodes(i);
    f[i] = high_pair(n, t, x);
    s(i) = std::sqrt(sys.rule.weights(i)) * std::pow(1.0 - t * x, 0.25) / x;
  }
  const double pre = c * std::pow(t, double(n)) / (pi * pi);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const double brace = divided(sys.rule.nodes(i), f[i], sys.rule.nodes(j), f[j]) - f[i].F * f[j].F / A;
      sys.M(i, j) = pre * s(i) * s(j) * brace;
    }
  return sys;
}

namespace {

double nystrom_value(const NystromSystem& sys, double lambda) {
  const int q = static_cast<int>(sys.M.rows());
  const double mu = lambda * lambda;
  if (sys.phase == Phase::Low)
    return determinant(Eigen::MatrixXd(Eigen::MatrixXd::Identity(q, q) - mu * sys.M));
  return lambda * sys.K0 / std::numbers::pi *
         determinant(Eigen::MatrixXd(Eigen::MatrixXd::Identity(q, q) + mu * sys.M));
}

}  // namespace

ContinuousResult fredholm_cont(const ModelPoint& point, int p_max, int q, Diagnostics* diag) {
  point.validate();
  if (p_max < 0) throw DomainError("fredholm_cont: p_max must be >= 0");
  if (p_max > q) throw BudgetError("fredholm_cont: p_max exceeds the number of quadrature nodes");
  if (diag && point.t > 0.9) diag->warn("fredholm_cont: kernels diverge as t -> 1");
  NystromSystem sys = nystrom_system(point.phase, point.n, point.t, q);
  ContinuousResult out;
  out.value = nystrom_value(sys, point.lambda);
  NystromSystem fine = nystrom_system(point.phase, point.n, point.t, 2 * q);
  out.est_error = std::abs(nystrom_value(fine, point.lambda) - out.value);

  const bool low = point.phase == Phase::Low;
  // Low: f^(2p) = (-1)^p e_p(M). High: f^(2p+1) = (K0/pi) e_p(M).
  Eigen::VectorXd e = neumann_coefficients(sys.M, p_max);
  for (int p = 0; p <= std::min(p_max, 3); ++p) e(p) = principal_minor_sum(sys.M, p);
  out.neumann.resize(p_max + 1);
  double sum = 0.0;
  for (int p = 0; p <= p_max; ++p) {
    const double f = low ? ((p % 2) ? -e(p) : e(p)) : sys.K0 / std::numbers::pi * e(p);
    out.neumann[p] = f;
    sum += std::pow(point.lambda, low ? 2 * p : 2 * p + 1) * f;
  }
  out.neumann_sum = sum;
  return out;
}

}  // namespace isingff
