#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingff/elliptic_exact.hpp"
#include "isingff/formfactor.hpp"
#include "isingff/scattering.hpp"
#include "isingff/toeplitz_bops.hpp"
#include "oracles.hpp"

using namespace isingff;
using std::numbers::pi;

TEST_CASE("Fourier coefficients of the scattering function") {
  for (double t : {0.1, 0.4, 0.7}) {
    const double K = oracle::ellK(t), E = oracle::ellE(t), s = std::sqrt(t);
    CHECK(scattering_F(0, t) == doctest::Approx(2 / pi * K).epsilon(1e-13));
    CHECK(scattering_F(1, t) == doctest::Approx(2 / pi / s * (K - E)).epsilon(1e-12));
    CHECK(scattering_F(-1, t) == doctest::Approx(scattering_F(1, t)).epsilon(1e-15));
    CHECK(scattering_Fbar(0, t) == doctest::Approx(2 / pi * ((t - 1) * K + 2 * E)).epsilon(1e-13));
    CHECK(scattering_Fbar(1, t) == doctest::Approx(-2 / (3 * pi) / s * ((t - 1) * K + (t + 1) * E)).epsilon(1e-11));
    Eigen::VectorXd F, Fb;
    fourier_coeffs_quadrature(t, 12, F, Fb);
    for (int m = 0; m <= 12; ++m) {
      CHECK(std::abs(F(m) - scattering_F(m, t)) < 1e-9);
      CHECK(std::abs(Fb(m) - scattering_Fbar(m, t)) < 1e-9);
    }
    CHECK(fourier_coeffs(t, 12).route_gap < 1e-9);
  }
}

TEST_CASE("Jost functions and their cuts") {
  const double t = 0.36;
  const std::complex<double> z(0.3, 0.8);
  CHECK(std::abs(scattering_function(z, t) - jost(z, t, JostSide::Exterior) / jost(z, t, JostSide::Interior)) < 1e-15);
  CHECK_THROWS_AS(jost(std::complex<double>(2.0, 0.0), t, JostSide::Interior), BranchError);
  CHECK_THROWS_AS(jost(std::complex<double>(0.3, 0.0), t, JostSide::Exterior), BranchError);
}

TEST_CASE("kernel matrix: entries in closed elliptic form") {
  for (double t : {0.3, 0.55}) {
    const double K = oracle::ellK(t), E = oracle::ellE(t), s = std::sqrt(t);
    CHECK(g_entry(0, 0, t) == doctest::Approx((-pi * pi + 4 * (t - 1) * K * K + 8 * K * E) / (2 * pi * pi)).epsilon(1e-12));
    CHECK(g_entry(-1, -1, t) == doctest::Approx(-(pi * pi + 8 * E * K + 4 * (t - 1) * K * K) / (2 * pi * pi)).epsilon(1e-12));
    const double gm10 = (2 * E * E - 4 * E * K - 2 * (t - 1) * K * K) / (pi * pi * s);
    CHECK(g_entry(-1, 0, t) == doctest::Approx(gm10).epsilon(1e-11));
    CHECK(g_entry(0, -1, t) == doctest::Approx(-gm10).epsilon(1e-11));
    const double gm11 = 2 / (pi * pi * t) * (E - K) * ((t + 1) * E + (t - 1) * K);
    CHECK(g_entry(-1, 1, t) == doctest::Approx(gm11).epsilon(1e-11));
    CHECK(g_entry(1, -1, t) == doctest::Approx(-gm11 / 3).epsilon(1e-11));
    const double g01 = (-6 * E * E - 4 * (t - 2) * E * K + 2 * (t - 1) * K * K) / (pi * pi * s);
    CHECK(g_entry(0, 1, t) == doctest::Approx(g01).epsilon(1e-11));
    CHECK(g_entry(1, 0, t) == doctest::Approx(g01 / 3).epsilon(1e-11));
    const double g11 = (-3 * pi * pi * t + 4 * (t - 1) * (3 * t - 2) * K * K + 8 * (3 * t - 2) * K * E +
                        8 * (t + 1) * E * E) / (6 * pi * pi * t);
    CHECK(g_entry(1, 1, t) == doctest::Approx(g11).epsilon(1e-11));
  }
}

TEST_CASE("kernel matrix: closed form against the defining series") {
  for (double t : {0.2, 0.5})
    for (int l = 0; l <= 6; ++l)
      for (int m = 0; m <= 6; ++m) CHECK(std::abs(g_entry(l, m, t) - g_entry_series(l, m, t)) < 1e-11);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> idx(-1, 8);
  for (int rep = 0; rep < 10; ++rep) {
    const int l = idx(rng), m = idx(rng);
    CHECK(std::abs(gbar_entry_series(l, m, 0.4) - g_entry(m, l, 0.4)) < 1e-11);
  }
}

TEST_CASE("anchor identity and the t = 0 limit") {
  for (double t = 0.1; t < 0.75; t += 0.1) CHECK(std::abs(g_entry(0, 0, t) + g_entry(-1, -1, t) + 1) < 1e-10);
  for (int l = 0; l <= 3; ++l)
    for (int m = 0; m <= 3; ++m) CHECK(g_entry(l, m, 0.0) == 0.0);
  CHECK(g_entry(-1, -1, 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("discrete Fredholm determinant") {
  CHECK(fredholm_disc({Phase::Low, 0.4, 0.0, 2}).value == doctest::Approx(1.0));
  // lambda = 1: (1-t)^{1/4} det equals the Toeplitz determinant
  const double t = 0.3;
  const double T = toeplitz_det(ising_moments(Phase::Low, t, 4 + moment_decay_length(t, 1e-18)), 2, 0);
  const DiscreteResult d = fredholm_disc({Phase::Low, t, 1.0, 2});
  CHECK(std::pow(1 - t, 0.25) * d.value == doctest::Approx(T).epsilon(1e-12));
  CHECK(d.doubling_gap < 1e-12);
  // lambda^2 Neumann coefficient: trace of the window = f^(2)
  const KernelMatrix km = build_kernel_matrix(0, default_truncation(0, 0.2), 0.2);
  const double ff2 = form_factor({Phase::Low, 0.2, 1.0, 0}, 1).value;
  CHECK(km.G.trace() == doctest::Approx(ff2).epsilon(1e-9));
  double diag = 0;
  for (int l = 0; l < 60; ++l) diag += g_entry(l, l, 0.2);
  CHECK(km.G.trace() == doctest::Approx(diag).epsilon(1e-13));
}

TEST_CASE("first zero of det[1 + lambda^2 G] at index -1 sits at lambda = 1") {
  // I_{-1} vanishes at lambda = 1 (I_0/I_{-1} has a pole there)
  const double z = first_determinant_zero(-1, 0.4);
  CHECK(z == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(marchenko_solve(-1, 0.4, 1.05), SingularError);
  CHECK(std::abs(fredholm_disc_det(-1, 0.4, 1.0)) < 1e-8);
}

TEST_CASE("Marchenko solution equals the moment ladder at lambda = 1") {
  for (double t : {0.25, 0.4}) {
    const BopsState s = ising_bops(Phase::Low, t, 6);
    for (int n = 0; n <= 4; ++n) {
      const MarchenkoSolution m = marchenko_solve(n, t, 1.0);
      CHECK(m.kappa_ratio == doctest::Approx(s.I(n + 1) / s.I(n)).epsilon(1e-11));
      CHECK(m.r_next == doctest::Approx(s.r(n + 1)).epsilon(1e-10));
      CHECK(m.rbar_next == doctest::Approx(s.rbar(n + 1)).epsilon(1e-10));
    }
  }
  const BopsState s = ising_bops(Phase::Low, 0.3, 2);
  CHECK(marchenko_solve(0, 0.3, 1.0).kappa_ratio == doctest::Approx(s.I(1)).epsilon(1e-12));
}

TEST_CASE("Marchenko solution matches the closed forms at n = 0, -1") {
  for (double lam : {0.3, 0.6, 0.9}) {
    const ExactValues ex = exact_values(0.4, lam);
    CHECK(marchenko_solve(0, 0.4, lam).kappa_ratio == doctest::Approx(ex.I1_over_I0).epsilon(1e-12));
    const MarchenkoSolution m = marchenko_solve(-1, 0.4, lam);
    CHECK(m.kappa_ratio == doctest::Approx(ex.I0_over_Iminus1).epsilon(1e-11));
    CHECK(m.r_next == doctest::Approx(ex.r0).epsilon(1e-12));
    CHECK(m.rbar_next == doctest::Approx(ex.rbar0).epsilon(1e-12));
  }
}

TEST_CASE("lambda expansions of the Marchenko outputs") {
  for (double t : {0.3, 0.5})
    for (int n = 0; n <= 2; ++n) {
      const auto kr = taylor_coefficients([&](double l) { return marchenko_solve(n, t, l).kappa_ratio; }, 4);
      const auto rn = taylor_coefficients([&](double l) { return marchenko_solve(n, t, l).r_next; }, 3);
      const auto rb = taylor_coefficients([&](double l) { return marchenko_solve(n, t, l).rbar_next; }, 3);
      double quartic = 0, cubic_r = 0, cubic_rb = 0;
      for (int j = n; j < n + 80; ++j) quartic += g_entry(n, j, t) * g_entry(j, n, t);
      for (int c = n + 1; c < n + 80; ++c) {
        cubic_r += scattering_F(c + 1, t) * g_entry(c, n, t);
        cubic_rb += scattering_Fbar(c + 1, t) * g_entry(n, c, t);
      }
      CHECK(kr[0] == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::abs(kr[2] + g_entry(n, n, t)) < 1e-6);
      CHECK(std::abs(kr[4] - quartic) < 1e-6);
      CHECK(std::abs(rn[1] - scattering_F(n + 1, t)) < 1e-6);
      CHECK(std::abs(rn[3] + cubic_r) < 1e-6);
      CHECK(std::abs(rb[1] - scattering_Fbar(n + 1, t)) < 1e-6);
      CHECK(std::abs(rb[3] + cubic_rb) < 1e-6);
    }
}

TEST_CASE("Toeplitz determinant rebuilt from the kernel matrix") {
  CHECK(toeplitz_from_g({Phase::Low, 0.3, 0.7, 0}) ==
        doctest::Approx(std::pow(0.7, 0.25) * fredholm_disc_det(0, 0.3, 0.7)).epsilon(1e-14));
  const BopsState s = ising_bops(Phase::Low, 0.25, 4);
  CHECK(std::abs(toeplitz_from_g({Phase::Low, 0.25, 1.0, 3}) - s.I(3)) < 1e-9);
  CHECK(std::abs(toeplitz_from_g({Phase::Low, 0.3, 1.0, 40}) / std::pow(0.7, 0.25) - 1) < 1e-12);
}

TEST_CASE("default truncation") {
  CHECK(default_truncation(0, 0.5) == std::clamp(int(std::ceil(std::log(1e-16) / std::log(0.5))), 8, 512));
  CHECK(default_truncation(3, 0.01) == 8);
  CHECK(default_truncation(0, 0.99) == 512);
}
