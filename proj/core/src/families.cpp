#include "ncfree/errors.hpp"
#include "ncfree/jacobi.hpp"

#include <cmath>
#include <string>

namespace ncfree {

JacobiParams point_mass(const Element& lambda) {
  const Algebra a = lambda.algebra();
  return JacobiParams::from_sequences(a, {lambda}, {}, Element::zero(a), LinMap::zero(a));
}

JacobiParams semicircular(const LinMap& alpha, const Element& mean) {
  return JacobiParams::constant(mean, alpha);
}

JacobiParams semicircular(const LinMap& alpha) { return semicircular(alpha, Element::zero(alpha.algebra())); }

JacobiParams bernoulli(const Element& lambda1, const Element& lambda2, const LinMap& alpha) {
  const Algebra a = alpha.algebra();
  return JacobiParams::from_sequences(a, {lambda1, lambda2}, {alpha}, Element::zero(a), LinMap::zero(a));
}

JacobiParams two_point(double t, const Element& a, const Element& c) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("two-point weight must lie strictly between 0 and 1");
  const Element diff = a - c;
  const Element lambda1 = t * a + (1.0 - t) * c;
  const Element lambda2 = (1.0 - t) * a + t * c;
  const Algebra alg = lambda1.algebra();
  LinMap alpha = LinMap::kraus(alg, {diff.matrix() * std::sqrt(t * (1.0 - t))});
  // a - c is self-adjoint, so the Kraus form reproduces b -> t(1-t)(a-c)b(a-c)
  return bernoulli(lambda1, lambda2, alpha);
}

JacobiParams free_poisson(const Element& lambda, const LinMap& alpha, const Element& mean) {
  const Algebra a = alpha.algebra();
  return JacobiParams::from_sequences(a, {mean}, {}, mean + lambda, alpha);
}

JacobiParams meixner(const Element& lambda, const LinMap& alpha, const LinMap& eta) {
  const Algebra a = eta.algebra();
  return JacobiParams::from_sequences(a, {Element::zero(a)}, {eta}, lambda, eta + alpha);
}

JacobiParams arcsine(const LinMap& alpha) {
  const Algebra a = alpha.algebra();
  return JacobiParams::from_sequences(a, {}, {Complex(2.0) * alpha}, Element::zero(a), alpha);
}

JacobiParams free_binomial(const LinMap& eta, const LinMap& alpha) {
  const Algebra a = eta.algebra();
  return JacobiParams::from_sequences(a, {}, {eta}, Element::zero(a), eta - alpha);
}

std::optional<MeixnerForm> recognize_meixner(const JacobiParams& params, double tol) {
  if (!approx_equal(params.lambda(1), Element::zero(params.algebra), tol, tol)) return std::nullopt;
  const std::size_t last = params.head_length() + 1;
  const Element& lambda = params.lambda(2);
  const LinMap& alpha2 = params.alpha(2);
  for (std::size_t i = 3; i <= last; ++i) {
    if (!approx_equal(params.lambda(i), lambda, tol, tol)) return std::nullopt;
    if (!approx_equal(params.alpha(i), alpha2, tol, tol)) return std::nullopt;
  }
  return MeixnerForm{lambda, alpha2 - params.alpha(1), params.alpha(1)};
}

JacobiParams meixner_convolve(const JacobiParams& p1, const JacobiParams& p2) {
  if (!(p1.algebra == p2.algebra)) throw AlgebraMismatch("Meixner parameters live in different algebras");
  const auto f1 = recognize_meixner(p1);
  const auto f2 = recognize_meixner(p2);
  if (!f1 || !f2) throw DomainError("input is not in the canonical free Meixner layout");
  if (!approx_equal(f1->lambda, f2->lambda) || !approx_equal(f1->alpha, f2->alpha)) {
    throw DomainError("free Meixner inputs have different (lambda, alpha)");
  }
  JacobiParams out = meixner(f1->lambda, f1->alpha, f1->eta + f2->eta);
  out.positive = p1.positive && p2.positive;
  return out;
}

Rational free_binomial_moment(int n, const Rational& t) {
  if (n < 0) throw std::invalid_argument("moment index must be nonnegative");
  if (t < 1) throw DomainError("free binomial parameter must be at least 1");
  if (n == 0) return 1;
  auto power = [](Rational base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  Rational sum = 0;
  for (int k = 1; k <= n; ++k) {
    sum += Rational(binomial(2 * k, k), 2 * k - 1) * power(t - 1, k) * power(t, 2 * (n - k));
  }
  return power(t, 2 * n) - t / 2 * sum;
}

double free_binomial_moment(int n, double t) {
  if (n < 0) throw std::invalid_argument("moment index must be nonnegative");
  if (t < 1.0) throw DomainError("free binomial parameter must be at least 1");
  if (n == 0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    sum += to_double(binomial(2 * k, k)) / (2 * k - 1) * std::pow(t - 1.0, k) * std::pow(t, 2 * (n - k));
  }
  return std::pow(t, 2 * n) - t / 2.0 * sum;
}

Element free_binomial_word_moment(const Element& a, const BWord& w, double t) {
  w.validate();
  if (a.dim() != w.algebra.dim) throw AlgebraMismatch("operator and word dimensions differ");
  if (!diagonal_expectation(a).is_zero(1e-12)) throw DomainError("operator does not have zero expectation");
  const Algebra diag = Algebra::diagonal(a.dim());
  for (const Element& e : basis(diag)) {
    const Matrix sandwich = a.matrix() * e.matrix() * a.matrix();
    if (!approx_equal(sandwich, Matrix(sandwich.diagonal().asDiagonal()))) {
      throw DomainError("a b a leaves the diagonal algebra");
    }
  }
  const std::size_t n = w.degree();
  if (n % 2 == 1) return Element::zero(diag);
  Matrix product = w.coeffs[0].matrix();
  for (std::size_t i = 1; i <= n; ++i) product = product * a.matrix() * w.coeffs[i].matrix();
  product *= free_binomial_moment(static_cast<int>(n / 2), t);
  return Element(diag, Matrix(product.diagonal().asDiagonal()));
}

PoissonLimit poisson_limit_check(long n, const Element& lambda1, const Element& lambda, const LinMap& alpha,
                                 std::size_t max_degree) {
  if (n < 1) throw std::invalid_argument("Poisson limit needs N >= 1");
  const double inv = 1.0 / static_cast<double>(n);
  const LinMap alpha_n = Complex(inv) * alpha;
  // mu_N = delta_{lambda1/N} + fM(lambda, -alpha/N; alpha/N)
  const JacobiParams block = meixner(lambda, Complex(-1.0) * alpha_n, alpha_n);
  JacobiParams sum = block;
  for (long i = 1; i < n; ++i) sum = meixner_convolve(sum, block);
  PoissonLimit out;
  out.convolved = shift_by_delta(sum, lambda1);
  out.target = free_poisson(lambda, alpha, lambda1);
  out.convolved_moments = moment_table(out.convolved, max_degree);
  out.target_moments = moment_table(out.target, max_degree);
  return out;
}

}  // namespace ncfree
