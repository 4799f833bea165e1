#include "isingff/formfactor.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "isingff/linalg.hpp"
#include "isingff/quad.hpp"

namespace isingff {

namespace {

// Visit every strictly increasing index tuple of length p from [0, q).
template <typename Fn>
void for_each_ordered_tuple(int q, int p, Fn&& fn) {
  std::vector<int> idx(p);
  if (p == 0) {
    fn(idx);
    return;
  }
  if (p > q) return;
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int k = p - 1;
    while (k >= 0 && idx[k] == q - p + k) --k;
    if (k < 0) return;
    ++idx[k];
    for (int j = k + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Sum over ordered tuples of the outer variables; the inner block of m
// variables is summed in closed form through the Gram determinant
//   sum_{k_1..k_m} prod mu(y_k) Delta^2(y) = m! det[sum_k mu(y_k) P_a(y_k) P_b(y_k)]
// with monic P_a(y) = (y - 1/2)^a. The m! cancels against the prefactor.
double product_rule(const QuadRule& outer, int p_outer, double outer_sign,
                    const QuadRule& inner, int m_inner, double inner_sign, double t) {
  const int q_out = outer.size(), q_in = inner.size();
  // Node-wise smooth factors (1 - t x)^{sign/2} times the rule weight.
  Eigen::VectorXd wo(q_out), wi(q_in);
  for (int i = 0; i < q_out; ++i)
    wo(i) = outer.weights(i) * std::pow(1.0 - t * outer.nodes(i), 0.5 * outer_sign);
  for (int k = 0; k < q_in; ++k)
    wi(k) = inner.weights(k) * std::pow(1.0 - t * inner.nodes(k), 0.5 * inner_sign);
  Eigen::MatrixXd basis(q_in, 2 * m_inner - 1);
  for (int k = 0; k < q_in; ++k) {
    double y = inner.nodes(k) - 0.5, pw = 1.0;
    for (int a = 0; a < 2 * m_inner - 1; ++a, pw *= y) basis(k, a) = pw;
  }
  // coupling(i,k) = (1 - t x_i y_k)^{-2}
  Eigen::MatrixXd coupling(q_out, q_in);
  for (int i = 0; i < q_out; ++i)
    for (int k = 0; k < q_in; ++k) {
      double c = 1.0 - t * outer.nodes(i) * inner.nodes(k);
      coupling(i, k) = 1.0 / (c * c);
    }

  double total = 0.0;
  Eigen::VectorXd mu(q_in);
  Eigen::MatrixXd gram(m_inner, m_inner);
  for_each_ordered_tuple(q_out, p_outer, [&](const std::vector<int>& idx) {
    double w = 1.0;
    for (int j = 0; j < p_outer; ++j) {
      w *= wo(idx[j]);
      for (int l = j + 1; l < p_outer; ++l) {
        double d = outer.nodes(idx[j]) - outer.nodes(idx[l]);
        w *= d * d;
      }
    }
    for (int k = 0; k < q_in; ++k) {
      double m = wi(k);
      for (int j = 0; j < p_outer; ++j) m *= coupling(idx[j], k);
      mu(k) = m;
    }
    // Hankel moments sum_k mu_k y_k^s, s = 0..2m-2.
    Eigen::VectorXd h = basis.transpose() * mu;
    for (int a = 0; a < m_inner; ++a)
      for (int b = 0; b < m_inner; ++b) gram(a, b) = h(a + b);
    total += w * determinant(gram);
  });
  return total;
}

void check_order(const ModelPoint& point, int p) {
  if (p < 0) throw DomainError("form_factor: order p must be >= 0");
  if (p > kMaxDirectOrder)
    throw BudgetError("form_factor: order p = " + std::to_string(p) +
                      " exceeds the direct product-rule budget (p <= " +
                      std::to_string(kMaxDirectOrder) + ")");
  point.validate();
}

}  // namespace

double small_t_exponent(int n, int p, Phase phase) {
  if (phase == Phase::Low) return double(p) * (n + p);
  return n * (p + 0.5) + double(p) * (p + 1);
}

double form_factor_at(const ModelPoint& point, int p, int q) {
  check_order(point, p);
  const int n = point.n;
  const double t = point.t;
  const double pi = std::numbers::pi;
  if (point.phase == Phase::Low) {
    if (p == 0) return 1.0;
    if (t == 0.0) return 0.0;
    // Odd variables: x^{n+1/2}(1-x)^{-1/2}(1-tx)^{-1/2}; even: x^{n-1/2}(1-x)^{1/2}(1-tx)^{1/2}.
    QuadRule odd = gauss_jacobi_rule(q, -0.5, n + 0.5);
    QuadRule even = gauss_jacobi_rule(q, 0.5, n - 0.5);
    double s = product_rule(odd, p, -1.0, even, p, +1.0, t);
    return std::pow(t, small_t_exponent(n, p, Phase::Low)) / std::pow(pi, 2 * p) * s;
  }
  // p+1 odd variables x^{n-1/2}(1-x)^{-1/2}(1-tx)^{-1/2}; p even x^{n+1/2}(1-x)^{1/2}(1-tx)^{1/2}.
  QuadRule odd = gauss_jacobi_rule(q, -0.5, n - 0.5);
  QuadRule even = gauss_jacobi_rule(q, 0.5, n + 0.5);
  double s = product_rule(even, p, +1.0, odd, p + 1, -1.0, t);
  return std::pow(t, small_t_exponent(n, p, Phase::High)) / std::pow(pi, 2 * p + 1) * s;
}

FormFactorValue form_factor(const ModelPoint& point, int p, int q, Diagnostics* diag) {
  check_order(point, p);
  if (q < 1) throw DomainError("form_factor: q must be >= 1");
  FormFactorValue out;
  out.p = p;
  out.value = form_factor_at(point, p, q);
  out.est_error = std::abs(form_factor_at(point, p, 2 * q) - out.value);
  if (diag && point.t > 0.9)
    diag->warn("form_factor: integrals diverge as t -> 1; t = " + std::to_string(point.t));
  return out;
}

SmallTCoefficients small_t_coeffs(int n, int p, Phase phase) {
  if (n < 0 || p < 0) throw DomainError("small_t_coeffs: n, p must be >= 0");
  const double lpi = std::log(std::numbers::pi);
  SmallTCoefficients c;
  if (phase == Phase::Low) {
    if (p == 0) return {1.0, 0.0};
    double l = -2.0 * std::lgamma(p + 1.0) - 2.0 * p * lpi + std::lgamma(n + p + 0.5) +
               std::lgamma(p + 0.5) - std::lgamma(n + 0.5) - std::lgamma(0.5);
    double prod = 0.0;
    for (int j = 0; j < p; ++j)
      prod += std::lgamma(n + j + 0.5) + std::lgamma(j + 0.5) + std::lgamma(j + 2.0) -
              std::lgamma(n + p + j + 1.0);
    c.c0 = std::exp(l + 2.0 * prod);
    c.c1 = c.c0 * p * (n + p) / (2.0 * (n + 2.0 * p) * (n + 2.0 * p)) * (4.0 * p * (n + p) + 1.0);
    return c;
  }
  double l = -std::lgamma(p + 1.0) - (2.0 * p + 1.0) * lpi + std::lgamma(n + 0.5) +
             std::lgamma(0.5) - std::lgamma(n + p + 1.0);
  double prod = 0.0;
  for (int j = 0; j < p; ++j)
    prod += std::lgamma(n + j + 1.5) + std::lgamma(j + 1.5) + std::lgamma(j + 2.0) -
            std::lgamma(n + p + j + 2.0);
  c.c0 = std::exp(l + 2.0 * prod);
  const double h = n + p + 0.5, d = n + 2.0 * p + 1.0;
  c.c1 = c.c0 * h / (2.0 * d * d) * (4.0 * p * (p + 1.0) * h + d);
  return c;
}

SeriesValue correlation_series(const ModelPoint& point, int p_max, int q, Diagnostics* diag) {
  point.validate();
  if (p_max < 0) throw DomainError("correlation_series: p_max must be >= 0");
  if (p_max > kMaxDirectOrder)
    throw BudgetError("correlation_series: p_max exceeds the direct product-rule budget");
  const double t = point.t, lam = point.lambda;
  const double pre = std::pow(1.0 - t, 0.25);
  SeriesValue out;
  double sum = (point.phase == Phase::Low) ? 1.0 : 0.0;
  const int p_first = (point.phase == Phase::Low) ? 1 : 0;
  for (int p = p_first; p <= p_max; ++p) {
    const int power = (point.phase == Phase::Low) ? 2 * p : 2 * p + 1;
    const double lp = std::pow(lam, power);
    if (lp == 0.0) {
      out.terms.push_back({p, 0.0, 0.0});
      continue;
    }
    FormFactorValue f = form_factor(point, p, q, diag);
    out.terms.push_back(f);
    sum += lp * f.value;
    out.est_error += pre * lp * f.est_error;
  }
  out.value = pre * sum;
  const int pn = p_max + 1;
  const int power = (point.phase == Phase::Low) ? 2 * pn : 2 * pn + 1;
  const double lam_next = std::pow(lam, power);
  if (point.phase == Phase::Low)
    out.tail_estimate = lam_next * std::pow(t, double(pn) * (point.n + pn));
  else
    out.tail_estimate = lam_next * std::pow(t, small_t_exponent(point.n, pn, Phase::High));
  out.leading_tail = pre * lam_next * small_t_coeffs(point.n, pn, point.phase).c0 *
                     std::pow(t, small_t_exponent(point.n, pn, point.phase));
  return out;
}

}  // namespace isingff
