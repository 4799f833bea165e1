#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "isingff/formfactor.hpp"
#include "isingff/fredholm_cont.hpp"
#include "isingff/scattering.hpp"
#include "oracles.hpp"

using namespace isingff;
using std::numbers::pi;

namespace {

// [x F(x) - y F(y)]/(x - y) for F = F1(a; b, 1; g; t, t x) from the Euler
// integral, where the divided difference is taken under the integral sign.
double divided_oracle(double a, double b, double g, double t, double x, double y) {
  const double pre = std::exp(std::lgamma(g) - std::lgamma(a) - std::lgamma(g - a));
  return pre * oracle::de_unit([&](double u, double v) {
    return std::pow(u, a - 1) * std::pow(v, g - a - 1) * std::pow(1 - t * u, -b) /
           ((1 - t * x * u) * (1 - t * y * u));
  });
}

}  // namespace

TEST_CASE("low-temperature kernel against the Euler-integral oracle") {
  for (int n : {0, 1, 3})
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.2, 0.7}, {0.5, 0.5}, {0.9, 0.05}}) {
      const double t = 0.4;
      const double C = std::exp(std::lgamma(n + 0.5) + std::lgamma(0.5) - std::lgamma(n + 2.0)) / (2 * pi * pi);
      const double expect = -C * std::pow(t, n + 1) * std::pow(x * y, 0.5 * n + 0.25) *
                            std::pow((1 - x) * (1 - y) * (1 - t * x) * (1 - t * y), -0.25) *
                            divided_oracle(n + 0.5, -0.5, n + 2.0, t, x, y);
      CHECK(kernel_low(x, y, n, t) == doctest::Approx(expect).epsilon(1e-10));
      CHECK(kernel_low(x, y, n, t) == doctest::Approx(kernel_low(y, x, n, t)).epsilon(1e-14));
    }
  CHECK_THROWS_AS(kernel_low(0.0, 0.5, 0, 0.3), DomainError);
}

TEST_CASE("high-temperature kernel components") {
  const int n = 1;
  const double t = 0.3, x = 0.35, y = 0.8;
  const double c = std::exp(std::lgamma(n + 0.5) + std::lgamma(0.5) - std::lgamma(n + 1.0));
  const HighKernel k = kernel_high(x, y, n, t);
  CHECK(k.K0 == doctest::Approx(c * std::sqrt(t) * oracle::hyp2f1_series(n + 0.5, 0.5, n + 1, t)).epsilon(1e-13));
  const double D = divided_oracle(n + 0.5, 0.5, n + 1.0, t, x, y);
  const double K2 = c / (pi * pi) * std::pow(t, n) * std::pow(x * y, 0.5 * n - 0.75) *
                    std::pow((1 - x) * (1 - y) * (1 - t * x) * (1 - t * y), 0.25) * D;
  CHECK(k.K2xy == doctest::Approx(K2).epsilon(1e-10));
  // F(x) = D(x, 0)
  const double F = divided_oracle(n + 0.5, 0.5, n + 1.0, t, x, 0.0);
  const double K1 = -c / pi * std::pow(t, 0.75 * n) * std::pow(x, 0.5 * n - 0.75) *
                    std::pow((1 - x) * (1 - t * x), 0.25) * F;
  CHECK(k.K1x == doctest::Approx(K1).epsilon(1e-10));
}

TEST_CASE("Neumann terms equal the form factors") {
  for (Phase ph : {Phase::Low, Phase::High})
    for (int n : {0, 2})
      for (double t : {0.2, 0.5}) {
        const ContinuousResult r = fredholm_cont({ph, t, 1.0, n}, 3, 32);
        for (int p = 0; p <= 3; ++p) {
          const double f = form_factor({ph, t, 1.0, n}, p).value;
          CHECK(r.neumann[p] == doctest::Approx(f).epsilon(1e-9));
        }
      }
}

TEST_CASE("Nystrom determinant equals the discrete route") {
  for (Phase ph : {Phase::Low, Phase::High})
    for (double lam : {0.4, 1.0})
      for (int n : {0, 1, 3}) {
        const ModelPoint p{ph, 0.45, lam, n};
        const ContinuousResult c = fredholm_cont(p);
        CHECK(c.value == doctest::Approx(fredholm_disc(p).value).epsilon(1e-12));
        CHECK(c.est_error < 1e-12);
      }
}

TEST_CASE("higher Neumann orders through eigenvalues") {
  const ModelPoint p{Phase::Low, 0.6, 1.0, 0};
  const ContinuousResult r = fredholm_cont(p, 8, 32);
  REQUIRE(r.neumann.size() == 9);
  CHECK(r.neumann_sum == doctest::Approx(r.value).epsilon(1e-10));
  CHECK_THROWS_AS(fredholm_cont(p, 40, 32), BudgetError);
}
