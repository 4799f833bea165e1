#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingff/toeplitz_bops.hpp"

using namespace isingff;
using cd = std::complex<double>;

namespace {

MomentTable<double> unit_symbol(int k_max) {
  MomentTable<double> w;
  w.k_max = k_max;
  w.values = Eigen::VectorXd::Zero(2 * k_max + 1);
  w.values(k_max) = 1.0;
  return w;
}

MomentTable<double> shifted(const MomentTable<double>& w, int dir) {
  MomentTable<double> o;
  o.k_max = w.k_max - 1;
  o.values.resize(2 * o.k_max + 1);
  for (int k = -o.k_max; k <= o.k_max; ++k) o.values(k + o.k_max) = w(k - dir);
  return o;
}

double ising_I(Phase ph, double t, int n) {
  return toeplitz_det(ising_moments(ph, t, n + 2 + moment_decay_length(t, 1e-18)), n, 0);
}

}  // namespace

TEST_CASE("Toeplitz determinants: trivial symbol, I_0, I_1") {
  const auto w = unit_symbol(12);
  for (int n = 0; n <= 10; ++n) CHECK(toeplitz_det(w, n, 0) == doctest::Approx(1.0));
  const auto wi = ising_moments(Phase::Low, 0.5, 20);
  CHECK(toeplitz_det(wi, 0, 0) == 1.0);
  CHECK(toeplitz_det(wi, 1, 0) == doctest::Approx(wi(0)).epsilon(1e-15));
  CHECK_THROWS_AS(toeplitz_det(wi, 3, 2), DomainError);
  CHECK_THROWS_AS(toeplitz_det(wi, 30, 0), DomainError);
}

TEST_CASE("Szego limit approached monotonically") {
  for (double t : {0.1, 0.3, 0.5}) {
    const double lim = std::pow(1 - t, 0.25);
    double prev = 1e300;
    for (int n = 1; n <= 24; ++n) {
      const double gap = std::abs(ising_I(Phase::Low, t, n) / lim - 1.0);
      CHECK(gap <= prev);
      prev = gap;
    }
    CHECK(prev < 1e-5);
  }
  CHECK(std::abs(ising_I(Phase::Low, 0.3, 24) - std::pow(0.7, 0.25)) < 1e-6);
}

TEST_CASE("ladder at t = 0 is trivial") {
  const BopsState s = bops_ladder(unit_symbol(10), 6);
  for (int n = 1; n <= 7; ++n) {
    CHECK(std::abs(s.r(n)) < 1e-15);
    CHECK(std::abs(s.rbar(n)) < 1e-15);
  }
  for (int n = 0; n <= 6; ++n) CHECK(s.kappa(n) == doctest::Approx(1.0));
  CHECK(s.r(0) == doctest::Approx(1.0));
}

TEST_CASE("recurrence identities for the determinant ladder") {
  for (double t : {0.1, 0.3, 0.5})
    for (Phase ph : {Phase::Low, Phase::High}) {
      const BopsState s = ising_bops(ph, t, 10);
      CHECK(s.residual_I0 < 1e-10);
      CHECK(s.residual_kappa < 1e-10);
    }
  const BopsState s = ising_bops(Phase::Low, 0.4, 4);
  const int n = 3;
  CHECK(s.I(n + 1) * s.I(n - 1) / (s.I(n) * s.I(n)) == doctest::Approx(1 - s.r(n) * s.rbar(n)).epsilon(1e-12));
  CHECK(s.kappa_sq(n) == doctest::Approx(s.kappa_sq(n - 1) + bops_phi(s, n, 0.0).real() * bops_phibar(s, n, 0.0).real())
                             .epsilon(1e-12));
  CHECK(bops_phi(s, n, 0.0).real() == doctest::Approx(s.kappa(n) * s.r(n)).epsilon(1e-13));
}

TEST_CASE("bi-orthonormality against the moments") {
  const BopsState s = ising_bops(Phase::Low, 0.4, 6);
  const auto& w = s.moments;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      double acc = 0;
      for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= n; ++k) acc += s.phi(m, j) * s.phi_star(n, n - k) * w(k - j);
      CHECK(std::abs(acc - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
  // phi_n is orthogonal to zeta^k, k < n, and phi*_n to zeta^k, 0 < k <= n
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k < n; ++k) {
      double a = 0, b = 0;
      for (int j = 0; j <= n; ++j) {
        a += s.phi(n, j) * w(k - j);
        b += s.phi_star(n, j) * w(k + 1 - j);
      }
      CHECK(std::abs(a) < 1e-10);
      CHECK(std::abs(b) < 1e-10);
    }
}

TEST_CASE("orthonormality by circle quadrature of the symbol") {
  const BopsState s = ising_bops(Phase::Low, 0.3, 4);
  const int M = 2048;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      cd acc = 0;
      for (int j = 0; j < M; ++j) {
        const double th = -std::numbers::pi + 2 * std::numbers::pi * (j + 1) / M;
        const cd z = std::polar(1.0, th);
        acc += s.symbol(th) * bops_phi(s, m, z) * bops_phibar(s, n, 1.0 / z);
      }
      acc /= double(M);
      CHECK(std::abs(acc - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("Christoffel-Darboux summation") {
  const BopsState s = ising_bops(Phase::Low, 0.4, 6);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.7, 0.7);
  for (int n = 0; n <= 6; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      const cd z(U(rng), U(rng)), u(U(rng), U(rng));
      cd lhs = 0;
      for (int j = 0; j <= n; ++j) lhs += bops_phi(s, j, z) * bops_phibar(s, j, u);
      const cd rhs = (bops_phi_star(s, n, z) * std::pow(u, n) * bops_phi(s, n, 1.0 / u) -
                      z * u * bops_phi(s, n, z) * bops_phibar(s, n, u)) /
                     (1.0 - z * u);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  // a real pair inside the disc
  const cd z = 0.4, u = 0.2;
  cd lhs = 0;
  for (int j = 0; j <= 3; ++j) lhs += bops_phi(s, j, z) * bops_phibar(s, j, u);
  const cd rhs = (bops_phi_star(s, 3, z) * std::pow(u, 3) * bops_phi(s, 3, 1.0 / u) -
                  z * u * bops_phi(s, 3, z) * bops_phibar(s, 3, u)) / (1.0 - z * u);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("Casoratians of the polynomial and associated solutions") {
  const BopsState s = ising_bops(Phase::Low, 0.4, 6);
  for (cd z : {cd(0.3, 0), cd(-0.5, 0.4), cd(1.8, -0.6)}) {
    for (int n = 0; n <= 5; ++n) {
      const BopsValues a = bops_eval(s, n, z), b = bops_eval(s, n + 1, z);
      const double kn = s.kappa(n);
      const cd c1 = b.phi * a.eps - b.eps * a.phi - 2.0 * bops_phi(s, n + 1, 0.0) / kn * std::pow(z, n);
      const cd c2 = b.phi_star * a.eps_star - b.eps_star * a.phi_star -
                    2.0 * bops_phibar(s, n + 1, 0.0) / kn * std::pow(z, n + 1);
      const cd c3 = a.phi * a.eps_star + a.eps * a.phi_star - 2.0 * std::pow(z, n);
      const double scale = std::max(1.0, std::pow(std::abs(z), n + 1));
      CHECK(std::abs(c1) < 1e-10 * scale);
      CHECK(std::abs(c2) < 1e-10 * scale);
      CHECK(std::abs(c3) < 1e-10 * scale);
      // psi by definition
      const cd F = caratheodory(s, z);
      CHECK(std::abs(a.psi - (a.eps - F * a.phi)) < 1e-12 * std::max(1.0, std::abs(a.psi)));
    }
  }
  CHECK_THROWS_AS(bops_eval(s, 1, cd(1.02, 0)), DomainError);
}

TEST_CASE("Laurent series of the associated functions match the Cauchy integrals") {
  const BopsState s = ising_bops(Phase::Low, 0.3, 4);
  for (cd z : {cd(0.5, 0.2), cd(-0.2, -0.6), cd(1.5, 0.3), cd(-0.4, 2.0)})
    for (int n = 0; n <= 4; ++n) {
      cd e, es;
      associated_series(s, n, z, e, es);
      const BopsValues v = bops_eval(s, n, z);
      CHECK(std::abs(e - v.eps) < 1e-12);
      CHECK(std::abs(es - v.eps_star) < 1e-12);
    }
  // eps*_n tends to 2/kappa_n at infinity
  for (int n = 0; n <= 4; ++n) {
    cd e, es;
    associated_series(s, n, cd(1e7, 0), e, es);
    CHECK(std::abs(es - 2.0 / s.kappa(n)) < 1e-6);
  }
}

TEST_CASE("jump conditions across the circle at lambda = 1") {
  const BopsState s = ising_bops(Phase::Low, 0.3, 4);
  for (int n = 0; n <= 3; ++n) CHECK(jump_residual(s, n, 64).max() < 1e-6);
  const BopsState triv = ising_bops(Phase::Low, 0.0, 3);
  CHECK(jump_residual(triv, 2, 16).max() < 1e-12);
}

TEST_CASE("transfer matrix") {
  const BopsState s = ising_bops(Phase::Low, 0.4, 6);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int rep = 0; rep < 10; ++rep) {
    const cd z(U(rng), U(rng));
    for (int n = 0; n < 6; ++n) {
      const Eigen::Matrix2cd K = transfer_matrix(s, n, z);
      CHECK(std::abs(K.determinant() - z) < 1e-12 * std::max(1.0, std::abs(z)));
      Eigen::Vector2cd Y(bops_phi(s, n, z), bops_phi_star(s, n, z));
      Eigen::Vector2cd Y1(bops_phi(s, n + 1, z), bops_phi_star(s, n + 1, z));
      CHECK((K * Y - Y1).norm() < 1e-12 * std::max(1.0, Y1.norm()));
    }
  }
}

TEST_CASE("CUG transformation equals the ladder of the shifted moments") {
  const BopsState s = ising_bops(Phase::Low, 0.4, 7);
  for (int dir : {1, -1}) {
    const BopsState c = cug_transform(s, dir);
    const BopsState d = bops_ladder(shifted(s.moments, dir), c.n_max);
    for (int n = 0; n <= c.n_max + 1; ++n) {
      CHECK(c.I(n) == doctest::Approx(d.I(n)).epsilon(1e-10));
      CHECK(c.r(n) == doctest::Approx(d.r(n)).epsilon(1e-9));
      CHECK(c.rbar(n) == doctest::Approx(d.rbar(n)).epsilon(1e-9));
    }
    for (int n = 0; n <= c.n_max; ++n) CHECK(c.kappa_sq(n) == doctest::Approx(d.kappa_sq(n)).epsilon(1e-10));
    CHECK(c.residual_I0 < 1e-10);
    CHECK(c.residual_kappa < 1e-10);
  }
  const BopsState plus = cug_transform(s, 1);
  CHECK(plus.rbar(2) == doctest::Approx(1.0 / s.r(2)).epsilon(1e-13));
}

TEST_CASE("CUG at t = 0: zero reflection coefficients, winding moments") {
  const BopsState s = ising_bops(Phase::Low, 0.0, 4);
  CHECK_THROWS_AS(cug_transform(s, -1), SingularError);
  // z^{-1} times the trivial symbol is the high-temperature t = 0 symbol up to sign
  const auto down = shifted(s.moments, -1);
  const auto high = ising_moments(Phase::High, 0.0, down.k_max);
  for (int k = -down.k_max; k <= down.k_max; ++k) CHECK(std::abs(down(k) + high(k)) < 1e-14);
}
