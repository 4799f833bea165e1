#include "isingff/quad.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <string>

#include "isingff/errors.hpp"

namespace isingff {

QuadRule gauss_jacobi_rule(int q, double alpha, double beta) {
  if (q < 1) throw DomainError("gauss_jacobi_rule: q must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError("gauss_jacobi_rule: exponents must exceed -1");

  // Golub-Welsch on (-1,1) for (1-xi)^alpha (1+xi)^beta, then xi -> (1+xi)/2.
  const double ab = alpha + beta;
  Eigen::VectorXd diag(q), sub(std::max(q - 1, 0));
  for (int k = 0; k < q; ++k) {
    if (k == 0) {
      diag(k) = (beta - alpha) / (ab + 2.0);
    } else {
      double s = 2.0 * k + ab;
      diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < q; ++k) {
    double s = 2.0 * k + ab;
    double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
    double den = s * s * (s + 1.0) * (s - 1.0);
    if (k == 1) {
      // (s - 1) = 1 + alpha + beta may vanish; use the reduced form.
      num = 4.0 * (1.0 + alpha) * (1.0 + beta);
      den = (2.0 + ab) * (2.0 + ab) * (3.0 + ab);
    }
    sub(k - 1) = std::sqrt(num / den);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw AccuracyError("gauss_jacobi_rule: eigen solve failed");

  // Total mass on (0,1): B(beta+1, alpha+1).
  const double mu0 = std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));
  QuadRule rule;
  rule.family = RuleFamily::Jacobi;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    double v0 = es.eigenvectors()(0, i);
    rule.nodes(i) = 0.5 * (1.0 + es.eigenvalues()(i));
    rule.weights(i) = mu0 * v0 * v0;
  }
  return rule;
}

QuadRule circle_rule(int M) {
  if (M < 1) throw DomainError("circle_rule: M must be >= 1");
  QuadRule rule;
  rule.family = RuleFamily::Circle;
  rule.M = M;
  rule.nodes.resize(M);
  rule.weights = Eigen::VectorXd::Constant(M, 1.0 / M);
  for (int j = 0; j < M; ++j) rule.nodes(j) = -std::numbers::pi + 2.0 * std::numbers::pi * (j + 1) / M;
  return rule;
}

namespace {

Eigen::VectorXcd trapezoid_moments(const ComplexSymbol& symbol, int k_max, int M) {
  // Nodes theta_j = -pi + 2 pi (j+1)/M, so e^{-ik theta_j} = (-1)^k e^{-2 pi i k (j+1)/M}.
  QuadRule rule = circle_rule(M);
  std::vector<std::complex<double>> a(M), A;
  for (int j = 0; j < M; ++j) a[(j + 1) % M] = symbol(rule.nodes(j));
  Eigen::FFT<double> fft;
  fft.fwd(A, a);
  Eigen::VectorXcd w(2 * k_max + 1);
  for (int k = -k_max; k <= k_max; ++k) {
    const double sign = (k % 2) ? -1.0 : 1.0;
    w(k + k_max) = sign * A[((k % M) + M) % M] / double(M);
  }
  return w;
}

}  // namespace

MomentTable<std::complex<double>> circle_moments(const ComplexSymbol& symbol, int k_max, int M) {
  if (k_max < 0) throw DomainError("circle_moments: k_max must be >= 0");
  if (M < 4 * k_max || M < 1) throw DomainError("circle_moments: need M >= 4 k_max");
  MomentTable<std::complex<double>> table;
  table.k_max = k_max;
  table.values = trapezoid_moments(symbol, k_max, M);
  Eigen::VectorXcd fine = trapezoid_moments(symbol, k_max, 2 * M);
  table.doubling_gap = (table.values - fine).cwiseAbs().maxCoeff();
  if (table.doubling_gap > 1e-12)
    throw AccuracyError("circle_moments: doubling M changed a moment by " +
                        std::to_string(table.doubling_gap));
  return table;
}

MomentTable<double> real_moments(const MomentTable<std::complex<double>>& w, double tol) {
  MomentTable<double> out;
  out.k_max = w.k_max;
  out.doubling_gap = w.doubling_gap;
  out.values = w.values.real();
  double im = w.values.imag().cwiseAbs().maxCoeff();
  if (im > tol) throw AccuracyError("real_moments: imaginary part " + std::to_string(im));
  return out;
}

}  // namespace isingff
