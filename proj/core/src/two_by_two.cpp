#include "ncfree/errors.hpp"
#include "ncfree/joint.hpp"

#include <algorithm>
#include <cmath>

namespace ncfree {

namespace {

// Square root of w asymptotic to `like` (w ~ like^2 for large arguments).
Complex sqrt_like(Complex w, Complex like) {
  Complex s = std::sqrt(w);
  if ((s * std::conj(like)).real() < 0.0) s = -s;
  return s;
}

double max_abs_diff(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

// F_mu(diag(x, y)) = diag(x - 1/y, y - 1/x).
std::array<Complex, 2> f_mu(Complex x, Complex y) { return {x - 1.0 / y, y - 1.0 / x}; }

// F_{mu+mu}(diag(x, y)) = diag(sqrt(x^2 - 4x/y), sqrt(y^2 - 4y/x)).
std::array<Complex, 2> f_conv(Complex x, Complex y) {
  return {sqrt_like(x * x - 4.0 * x / y, x), sqrt_like(y * y - 4.0 * y / x, y)};
}

}  // namespace

TwoByTwoReport two_by_two_model_check(Complex lambda, Complex gamma) {
  if (lambda == Complex(0.0) || gamma == Complex(0.0)) throw DomainError("lambda and gamma must be nonzero");
  const Complex x = 1.0 / (lambda * gamma);
  if (!(std::abs(x) < 0.25)) throw DomainError("moment series needs |1/(lambda gamma)| < 1/4");

  TwoByTwoReport r;
  r.lambda = lambda;
  r.gamma = gamma;
  r.f_mu = f_mu(lambda, gamma);
  r.g_mu = {1.0 / r.f_mu[0], 1.0 / r.f_mu[1]};

  // F_mu^{-1}(diag(u, v)) solves x - 1/y = u, y - 1/x = v
  const Complex u = lambda;
  const Complex v = gamma;
  r.f_mu_inverse = {(u + sqrt_like(u * u + 4.0 * u / v, u)) / 2.0, (v + sqrt_like(v * v + 4.0 * v / u, v)) / 2.0};
  r.inverse_residual = max_abs_diff(f_mu(r.f_mu_inverse[0], r.f_mu_inverse[1]), {lambda, gamma});

  r.f_conv_closed = f_conv(lambda, gamma);

  // G_{mu+mu}(b) = sum_n C(2n,n) b^{-1} (a b^{-1} a b^{-1})^n with a = e12 + e21
  Matrix a(2, 2);
  a << 0.0, 1.0, 1.0, 0.0;
  Matrix b_inv = Matrix::Zero(2, 2);
  b_inv(0, 0) = 1.0 / lambda;
  b_inv(1, 1) = 1.0 / gamma;
  const Matrix step = a * b_inv * a * b_inv;
  Matrix power = b_inv;
  Matrix sum = Matrix::Zero(2, 2);
  double central = 1.0;  // C(2n, n)
  std::size_t n = 0;
  for (; n < 100000; ++n) {
    const Matrix term = central * power;
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    const double k = static_cast<double>(n + 1);
    central *= (2.0 * k) * (2.0 * k - 1.0) / (k * k);
    power = power * step;
  }
  const Element g = diagonal_expectation(Element(Algebra::full(2), sum));
  r.g_conv_series = {g(0, 0), g(1, 1)};
  r.series_terms = n + 1;
  r.f_conv_series = {1.0 / r.g_conv_series[0], 1.0 / r.g_conv_series[1]};
  r.residual = max_abs_diff(r.f_conv_closed, r.f_conv_series);

  const std::array<Complex, 2> shifted{2.0 * r.f_mu_inverse[0] - lambda, 2.0 * r.f_mu_inverse[1] - gamma};
  r.linearization_residual = max_abs_diff(f_conv(shifted[0], shifted[1]), {lambda, gamma});
  return r;
}

}  // namespace ncfree
