#include <doctest.h>

#include <cmath>

#include "isingff/painleve.hpp"

using namespace isingff;

TEST_CASE("sigma form at lambda = 1") {
  for (Phase ph : {Phase::Low, Phase::High})
    for (int n : {0, 1, 3}) {
      const SigmaSample s = sigma_residual({ph, 0.3, 1.0, n}, SigmaRoute::Toeplitz);
      CHECK(!s.conjecture);
      CHECK(std::abs(s.residual) < 1e-5);
    }
  const SigmaSample d = sigma_residual({Phase::High, 0.3, 1.0, 1}, SigmaRoute::DiscreteFredholm);
  CHECK(std::abs(d.residual) < 1e-5);
}

TEST_CASE("both routes give the same sigma") {
  for (Phase ph : {Phase::Low, Phase::High}) {
    const ModelPoint p{ph, 0.35, 1.0, 2};
    const SigmaSample a = sigma_residual(p, SigmaRoute::Toeplitz);
    const SigmaSample b = sigma_residual(p, SigmaRoute::DiscreteFredholm);
    // the prefactor's t/4 cancels the Toeplitz shift in the low phase
    CHECK(a.sigma == doctest::Approx(b.sigma).epsilon(1e-8));
  }
}

TEST_CASE("lambda = 0 is the trivial solution") {
  const SigmaSample s = sigma_residual({Phase::Low, 0.4, 0.0, 2}, SigmaRoute::DiscreteFredholm);
  CHECK(std::abs(s.residual) < 1e-12);
}

TEST_CASE("residual off lambda = 1 is flagged and small") {
  const SigmaSample s = sigma_residual({Phase::Low, 0.4, 0.7, 2}, SigmaRoute::DiscreteFredholm);
  CHECK(s.conjecture);
  CHECK(std::abs(s.residual) < 1e-4);
}

TEST_CASE("residual decays as h^2") {
  for (Phase ph : {Phase::Low, Phase::High}) {
    const ModelPoint p{ph, 0.6, 1.0, 2};
    const double r1 = std::abs(sigma_residual(p, SigmaRoute::Toeplitz, 8e-3).residual);
    const double r2 = std::abs(sigma_residual(p, SigmaRoute::Toeplitz, 4e-3).residual);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.0);
  }
}

TEST_CASE("stencil must stay inside (0,1)") {
  CHECK_THROWS_AS(sigma_residual({Phase::Low, 0.001, 1.0, 1}, SigmaRoute::Toeplitz, 1e-3), DomainError);
  CHECK_THROWS_AS(sigma_residual({Phase::Low, 0.999, 1.0, 1}, SigmaRoute::Toeplitz, 1e-3), DomainError);
}
