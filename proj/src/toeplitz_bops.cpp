#include "isingff/toeplitz_bops.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace isingff {

namespace {

using cd = std::complex<double>;

void build_polynomials(BopsState& s) {
  const int top = s.n_max;
  s.has_polynomials = (s.kappa_sq.array() > 0.0).all();
  if (!s.has_polynomials) {
    s.phi.resize(0, 0);
    s.phi_star.resize(0, 0);
    return;
  }
  s.phi = Eigen::MatrixXd::Zero(top + 1, top + 1);
  s.phi_star = Eigen::MatrixXd::Zero(top + 1, top + 1);
  s.phi(0, 0) = s.kappa(0);
  s.phi_star(0, 0) = s.kappa(0);
  for (int n = 0; n < top; ++n) {
    const double kn = s.kappa(n), kn1 = s.kappa(n + 1);
    const double p0 = kn1 * s.r(n + 1), pb0 = kn1 * s.rbar(n + 1);
    // kappa_n phi_{n+1} = kappa_{n+1} z phi_n + phi_{n+1}(0) phi*_n
    // kappa_n phi*_{n+1} = kappa_{n+1} phi*_n + phibar_{n+1}(0) z phi_n
    for (int j = 0; j <= n; ++j) {
      s.phi(n + 1, j + 1) += kn1 * s.phi(n, j) / kn;
      s.phi(n + 1, j) += p0 * s.phi_star(n, j) / kn;
      s.phi_star(n + 1, j) += kn1 * s.phi_star(n, j) / kn;
      s.phi_star(n + 1, j + 1) += pb0 * s.phi(n, j) / kn;
    }
  }
}

cd horner(const Eigen::MatrixXd& coef, int n, cd z) {
  cd v = 0.0;
  for (int j = n; j >= 0; --j) v = v * z + coef(n, j);
  return v;
}

void require_polynomials(const BopsState& s, int n) {
  if (!s.has_polynomials) throw DomainError("bops: polynomials need kappa_n^2 > 0 on the window");
  if (n < 0 || n > s.n_max) throw DomainError("bops: index n outside the ladder window");
}

// Trapezoid points for a Cauchy integral at z: the pole term decays like
// |z|^M (or |z|^-M), the symbol like its moment table.
int cauchy_points(const BopsState& s, cd z, int n) {
  const double r = std::abs(z);
  const double rho = std::max(r < 1.0 ? r : 1.0 / r, 0.5);
  const double need = std::log(1e-18) / std::log(rho);
  int M = 256;
  while (M < need || M < 8 * (n + 1) || M < 4 * (s.moments.k_max + 1)) M *= 2;
  return M;
}

}  // namespace

BopsState bops_ladder(const MomentTable<double>& moments, int n_max) {
  if (n_max < 0) throw DomainError("bops_ladder: n_max must be >= 0");
  if (!moments.covers(n_max + 2) || !moments.covers(-(n_max + 2)))
    throw DomainError("bops_ladder: moments must cover |k| <= n_max + 2");
  BopsState s;
  s.moments = moments;
  s.n_max = n_max;
  const int L = n_max + 2;
  s.I.resize(L);
  s.I_plus.resize(L);
  s.I_minus.resize(L);
  s.r.resize(L);
  s.rbar.resize(L);
  for (int n = 0; n < L; ++n) {
    s.I(n) = toeplitz_det(moments, n, 0);
    s.I_plus(n) = toeplitz_det(moments, n, 1);
    s.I_minus(n) = toeplitz_det(moments, n, -1);
    if (s.I(n) == 0.0 || !std::isfinite(s.I(n)))
      throw SingularError("bops_ladder: I_" + std::to_string(n) + "[w] vanishes");
    const double sign = (n % 2) ? -1.0 : 1.0;
    s.r(n) = sign * s.I_plus(n) / s.I(n);
    s.rbar(n) = sign * s.I_minus(n) / s.I(n);
  }
  s.kappa_sq.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) s.kappa_sq(n) = s.I(n) / s.I(n + 1);
  for (int n = 1; n <= n_max; ++n) {
    const double lhs = s.I(n + 1) * s.I(n - 1) / (s.I(n) * s.I(n));
    s.residual_I0 = std::max(s.residual_I0, std::abs(lhs - (1.0 - s.r(n) * s.rbar(n))));
    const double k = s.kappa_sq(n) - s.kappa_sq(n - 1) - s.kappa_sq(n) * s.r(n) * s.rbar(n);
    s.residual_kappa = std::max(s.residual_kappa, std::abs(k));
  }
  build_polynomials(s);
  return s;
}

BopsState ising_bops(Phase phase, double t, int n_max) {
  const int k_max = n_max + 2 + moment_decay_length(t, 1e-18);
  BopsState s = bops_ladder(ising_moments(phase, t, k_max), n_max);
  s.symbol = ising_symbol(phase, t);
  return s;
}

std::complex<double> bops_phi(const BopsState& s, int n, cd z) {
  require_polynomials(s, n);
  return horner(s.phi, n, z);
}

std::complex<double> bops_phi_star(const BopsState& s, int n, cd z) {
  require_polynomials(s, n);
  return horner(s.phi_star, n, z);
}

std::complex<double> bops_phibar(const BopsState& s, int n, cd z) {
  require_polynomials(s, n);
  cd v = 0.0;
  for (int j = n; j >= 0; --j) v = v * z + s.phi_star(n, n - j);
  return v;
}

namespace {

// (1/M) sum_j (zeta_j + z)/(zeta_j - z) w(zeta_j) g(zeta_j)
template <typename G>
cd cauchy(const BopsState& s, cd z, int M, G&& g) {
  cd sum = 0.0;
  for (int j = 0; j < M; ++j) {
    const double th = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / M;
    const cd zeta = std::polar(1.0, th);
    sum += (zeta + z) / (zeta - z) * s.symbol(th) * g(zeta);
  }
  return sum / double(M);
}

void require_off_circle(cd z) {
  if (std::abs(std::abs(z) - 1.0) < 0.05)
    throw DomainError("bops_eval: |z| within 0.05 of the unit circle; Cauchy quadrature refused");
}

}  // namespace

std::complex<double> caratheodory(const BopsState& s, cd z) {
  if (!s.symbol) throw DomainError("caratheodory: state carries no symbol");
  require_off_circle(z);
  return cauchy(s, z, cauchy_points(s, z, 0), [](cd) { return cd(1.0); });
}

BopsValues bops_eval(const BopsState& s, int n, cd z) {
  require_polynomials(s, n);
  if (!s.symbol) throw DomainError("bops_eval: state carries no symbol");
  require_off_circle(z);
  BopsValues v;
  v.phi = bops_phi(s, n, z);
  v.phi_star = bops_phi_star(s, n, z);
  const int M = cauchy_points(s, z, n);
  const cd F = cauchy(s, z, M, [](cd) { return cd(1.0); });
  const double k0 = s.kappa(0);
  if (n == 0) {
    v.eps = k0 * (s.moments(0) + F);
    v.eps_star = k0 * (s.moments(0) - F);
  } else {
    v.eps = cauchy(s, z, M, [&](cd zeta) { return bops_phi(s, n, zeta); });
    v.eps_star = 1.0 / s.kappa(n) - cauchy(s, z, M, [&](cd zeta) { return bops_phi_star(s, n, zeta); });
  }
  v.psi = v.eps - F * v.phi;
  v.psi_star = v.eps_star + F * v.phi_star;
  return v;
}

void associated_series(const BopsState& s, int n, cd z, cd& eps, cd& eps_star) {
  require_polynomials(s, n);
  const MomentTable<double>& w = s.moments;
  const int K = w.k_max;
  const bool inside = std::abs(z) < 1.0;
  // S_j = sum over the Laurent tail for the monomial zeta^j.
  auto mono = [&](int j) {
    cd acc = 0.0;
    if (inside) {
      cd zk = 1.0;
      for (int k = 1; k - j <= K; ++k) {
        zk *= z;
        acc += zk * w(k - j);
      }
      return cd(w(-j)) + 2.0 * acc;
    }
    const cd zi = 1.0 / z;
    cd zk = 1.0;
    for (int k = 1; k + j <= K; ++k) {
      zk *= zi;
      acc += zk * w(-k - j);
    }
    return -(cd(w(-j)) + 2.0 * acc);
  };
  if (n == 0) {
    const cd F = mono(0);
    const double k0 = s.kappa(0);
    eps = k0 * (w(0) + F);
    eps_star = k0 * (w(0) - F);
    return;
  }
  cd e = 0.0, es = 0.0;
  for (int j = 0; j <= n; ++j) {
    const cd m = mono(j);
    e += s.phi(n, j) * m;
    es += s.phi_star(n, j) * m;
  }
  eps = e;
  eps_star = 1.0 / s.kappa(n) - es;
}

JumpResidual jump_residual(const BopsState& s, int n, int circle_points, double lambda,
                           Diagnostics* diag) {
  require_polynomials(s, n);
  if (!s.symbol) throw DomainError("jump_residual: state carries no symbol");
  if (circle_points < 1) throw DomainError("jump_residual: need at least one circle point");
  const double deltas[3] = {1e-3, 5e-4, 2.5e-4};
  const double l2 = lambda * lambda;
  JumpResidual out;
  // Richardson on g(d) = g0 + a d + b d^2 + ...
  auto extrapolate = [&](const cd (&g)[3]) {
    const cd r1a = 2.0 * g[1] - g[0];
    const cd r1b = 2.0 * g[2] - g[1];
    const cd r2 = (4.0 * r1b - r1a) / 3.0;
    out.extrapolation_spread = std::max(out.extrapolation_spread, std::abs(r2 - r1b));
    return r2;
  };
  for (int j = 0; j < circle_points; ++j) {
    const double th = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / circle_points;
    const cd z = std::polar(1.0, th);
    cd ein[3], eout[3], esin[3], esout[3];
    for (int i = 0; i < 3; ++i) {
      associated_series(s, n, z * (1.0 - deltas[i]), ein[i], esin[i]);
      associated_series(s, n, z * (1.0 + deltas[i]), eout[i], esout[i]);
    }
    const cd e_in = extrapolate(ein), e_out = extrapolate(eout);
    const cd es_in = extrapolate(esin), es_out = extrapolate(esout);
    const cd wz = s.symbol(th);
    const cd phi = bops_phi(s, n, z), phis = bops_phi_star(s, n, z);
    out.phi = std::max(out.phi, std::abs(wz * phi + 0.5 * e_out - 0.5 * l2 * e_in));
    out.phi_star = std::max(out.phi_star, std::abs(wz * phis - 0.5 * es_out + 0.5 * l2 * es_in));
  }
  if (diag && out.extrapolation_spread > 1e-8)
    diag->warn("jump_residual: Richardson extrapolation spread " +
               std::to_string(out.extrapolation_spread));
  return out;
}

BopsState cug_transform(const BopsState& s, int direction) {
  if (direction != 1 && direction != -1) throw DomainError("cug_transform: direction must be +1 or -1");
  if (s.n_max < 1) throw DomainError("cug_transform: need n_max >= 1");
  // dir +1 is driven by r, dir -1 by rbar (the maps are mirror images).
  const Eigen::VectorXd& R = (direction == 1) ? s.r : s.rbar;
  for (int n = 0; n <= s.n_max + 1; ++n)
    if (R(n) == 0.0)
      throw SingularError("cug_transform: vanishing reflection coefficient at n = " + std::to_string(n));
  BopsState o;
  o.n_max = s.n_max - 1;
  const int L = o.n_max + 2;
  o.I.resize(L);
  o.r.resize(L);
  o.rbar.resize(L);
  o.kappa_sq.resize(o.n_max + 1);
  Eigen::VectorXd Rn(L), Rb(L);
  for (int n = 0; n < L; ++n) {
    const double sign = (n % 2) ? -1.0 : 1.0;
    o.I(n) = sign * R(n) * s.I(n);
    Rb(n) = 1.0 / R(n);
    Rn(n) = (n == 0) ? 1.0
                     : R(n) - (s.kappa_sq(n - 1) / s.kappa_sq(n)) * R(n + 1) * R(n - 1) / R(n);
  }
  for (int n = 0; n <= o.n_max; ++n) o.kappa_sq(n) = -s.kappa_sq(n) * R(n) / R(n + 1);
  o.r = (direction == 1) ? Rn : Rb;
  o.rbar = (direction == 1) ? Rb : Rn;
  o.I_plus.resize(L);
  o.I_minus.resize(L);
  for (int n = 0; n < L; ++n) {
    const double sign = (n % 2) ? -1.0 : 1.0;
    o.I_plus(n) = sign * o.r(n) * o.I(n);
    o.I_minus(n) = sign * o.rbar(n) * o.I(n);
  }
  // Moments of z^{dir} w: w_k -> w_{k - dir}.
  o.moments.k_max = s.moments.k_max - 1;
  o.moments.values.resize(2 * o.moments.k_max + 1);
  for (int k = -o.moments.k_max; k <= o.moments.k_max; ++k)
    o.moments.values(k + o.moments.k_max) = s.moments(k - direction);
  if (s.symbol) {
    ComplexSymbol base = s.symbol;
    o.symbol = [base, direction](double th) { return std::polar(1.0, direction * th) * base(th); };
  }
  for (int n = 1; n <= o.n_max; ++n) {
    const double lhs = o.I(n + 1) * o.I(n - 1) / (o.I(n) * o.I(n));
    o.residual_I0 = std::max(o.residual_I0, std::abs(lhs - (1.0 - o.r(n) * o.rbar(n))));
    const double k = o.kappa_sq(n) - o.kappa_sq(n - 1) - o.kappa_sq(n) * o.r(n) * o.rbar(n);
    o.residual_kappa = std::max(o.residual_kappa, std::abs(k));
  }
  build_polynomials(o);
  return o;
}

Eigen::Matrix2cd transfer_matrix(const BopsState& s, int n, cd z) {
  if (!s.has_polynomials || n < 0 || n + 1 > s.n_max)
    throw DomainError("transfer_matrix: index outside the ladder window");
  const double kn = s.kappa(n), kn1 = s.kappa(n + 1);
  Eigen::Matrix2cd K;
  K << kn1 * z, kn1 * s.r(n + 1), kn1 * s.rbar(n + 1) * z, kn1;
  return K / kn;
}

}  // namespace isingff
