#include "generators.hpp"
#include "oracles.hpp"

#include <ncfree/errors.hpp>
#include <ncfree/jacobi.hpp>
#include <ncfree/joint.hpp>

#include <doctest/doctest.h>

#include <cmath>
#include <cstdlib>

using namespace ncfree;

namespace {

Element scalar(Complex c) { return Element::scalar(Algebra::scalar(), c); }

bool close(const Element& a, const Element& b, double rel = 1e-9) {
  const double scale = std::max({1.0, a.matrix().norm(), b.matrix().norm()});
  return (a.matrix() - b.matrix()).norm() <= rel * scale;
}

}  // namespace

TEST_CASE("scalar moments match the tridiagonal matrix oracle") {
  auto rng = oracle::rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::complex<double>> lam, alp;
    std::vector<Element> lambdas;
    std::vector<LinMap> alphas;
    for (int i = 0; i < 4; ++i) {
      const Complex l(gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1));
      const Complex a(gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1));
      lam.push_back(l);
      alp.push_back(a);
      if (i < 3) {
        lambdas.push_back(scalar(l));
        alphas.push_back(LinMap::scalar(Algebra::scalar(), a));
      }
    }
    const auto params = JacobiParams::from_sequences(Algebra::scalar(), lambdas, alphas, scalar(lam[3]),
                                                     LinMap::scalar(Algebra::scalar(), alp[3]));
    const auto expected = oracle::jacobi_matrix_moments(lam, alp, 10);
    for (std::size_t n = 0; n <= 10; ++n) {
      INFO("trial " << trial << ", degree " << n);
      const auto w = BWord::units(Algebra::scalar(), n);
      CHECK(close(moment(params, w), scalar(expected[n])));
      CHECK(close(fock_moment(params, w), scalar(expected[n])));
    }
  }
}

TEST_CASE("classical scalar families") {
  const Algebra s = Algebra::scalar();
  const auto semi = semicircular(LinMap::identity(s));
  const auto poisson = free_poisson(scalar(1.0), LinMap::identity(s), scalar(1.0));
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto w = BWord::units(s, n);
    const double catalan = n % 2 == 0 ? to_double(oracle::catalan(static_cast<int>(n / 2))) : 0.0;
    CHECK(close(moment(semi, w), scalar(catalan)));
    CHECK(close(moment(poisson, w), scalar(to_double(oracle::catalan(static_cast<int>(n))))));
  }
  // Two-point law t delta_a + (1 - t) delta_c.
  const auto two = two_point(0.3, scalar(1.5), scalar(-2.0));
  const auto bern = bernoulli(scalar(1.0), scalar(-1.0), LinMap::identity(s));
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto w = BWord::units(s, n);
    CHECK(close(moment(two, w), scalar(0.3 * std::pow(1.5, n) + 0.7 * std::pow(-2.0, n))));
    // J(1, -1; 1) is a two-point law with atoms at +-sqrt(2).
    const auto expected = oracle::jacobi_matrix_moments({1.0, -1.0, 0.0}, {1.0, 0.0}, static_cast<int>(n));
    CHECK(close(moment(bern, w), scalar(expected[n])));
  }
  CHECK(close(moment(point_mass(scalar(3.0)), BWord::units(s, 4)), scalar(81.0)));
  CHECK(close(moment(arcsine(LinMap::identity(s)), BWord::units(s, 6)), scalar(20.0)));
  CHECK_THROWS_AS(two_point(1.0, scalar(1.0), scalar(0.0)), DomainError);
}

TEST_CASE("partition sum and Fock model agree on operator-valued inputs") {
  auto rng = oracle::rng(7);
  for (Algebra a : {Algebra::diagonal(2), Algebra::full(2), Algebra::diagonal(3)}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto params = gen::random_params(rng, a, 2);
      for (std::size_t n = 0; n <= 5; ++n) {
        const auto w = gen::random_word(rng, a, n);
        INFO(a.to_string() << ", trial " << trial << ", degree " << n);
        CHECK(close(moment(params, w), fock_moment(params, w)));
      }
    }
  }
}

TEST_CASE("low-degree moments in closed form") {
  const Algebra m2 = Algebra::full(2);
  auto rng = oracle::rng(3);
  const auto params = gen::random_params(rng, m2, 3);
  const Element b0 = gen::random_element(rng, m2, 1.0, false);
  const Element b1 = gen::random_element(rng, m2, 1.0, false);
  const Element b2 = gen::random_element(rng, m2, 1.0, false);
  const Element& l1 = params.lambda(1);
  // E[b0 X b1] = b0 lambda_1 b1.
  CHECK(close(moment(params, BWord{m2, {b0, b1}}), b0 * l1 * b1));
  // E[b0 X b1 X b2] = b0 (lambda_1 b1 lambda_1 + alpha_1[b1]) b2.
  CHECK(close(moment(params, BWord{m2, {b0, b1, b2}}), b0 * (l1 * b1 * l1 + params.alpha(1)(b1)) * b2));
  // The flip map on D_2 shows up directly in the second moment.
  const Algebra d2 = Algebra::diagonal(2);
  const auto flipped = semicircular(LinMap::flip(d2));
  const Element e = Element::diag(d2, {1.0, 0.0});
  CHECK(close(moment(flipped, BWord{d2, {Element::unit(d2), e, Element::unit(d2)}}), Element::diag(d2, {0.0, 1.0})));
}

TEST_CASE("t_pi follows the depth rule") {
  const Algebra s = Algebra::scalar();
  const auto params = JacobiParams::from_sequences(s, {scalar(2.0), scalar(3.0), scalar(5.0)},
                                                   {LinMap::scalar(s, 7.0), LinMap::scalar(s, 11.0)}, scalar(13.0),
                                                   LinMap::scalar(s, 17.0));
  const auto w = BWord::units(s, 5);
  // (1,4) (2,3) (5): alpha_1 alpha_2 lambda_1.
  CHECK(close(t_pi(params, w, Partition12::parse("(1,4) (2,3) (5)")), scalar(7.0 * 11.0 * 2.0)));
  // (1,5) (2) (3,4): alpha_1 lambda_2 alpha_2.
  CHECK(close(t_pi(params, w, Partition12::parse("(1,5) (2) (3,4)")), scalar(7.0 * 3.0 * 11.0)));
  // Singleton under two pairs uses lambda_3.
  CHECK(close(t_pi(params, w, Partition12::parse("(1,5) (2,4) (3)")), scalar(7.0 * 11.0 * 5.0)));
}

TEST_CASE("degree cap and algebra checks") {
  const Algebra s = Algebra::scalar();
  const auto semi = semicircular(LinMap::identity(s));
  CHECK_THROWS_AS(moment(semi, BWord::units(s, 5), 4), DegreeCapExceeded);
  CHECK_THROWS_AS(fock_moment(semi, BWord::units(s, 5), 4), DegreeCapExceeded);
  CHECK_NOTHROW(moment(semi, BWord::units(s, 4), 4));
  CHECK_THROWS_AS(moment(semi, BWord::units(Algebra::full(2), 2)), AlgebraMismatch);
  ::setenv("NCFREE_DEGREE_CAP", "6", 1);
  CHECK(default_degree_cap() == 6);
  ::unsetenv("NCFREE_DEGREE_CAP");
  CHECK(default_degree_cap() == 16);

  auto bad = semicircular(LinMap::dense(s, Matrix::Constant(1, 1, Complex(-1.0))));
  bad.positive = true;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("truncated sequences stop at the first zero alpha") {
  const Algebra s = Algebra::scalar();
  const auto p = bernoulli(scalar(0.5), scalar(-0.25), LinMap::scalar(s, 2.0));
  const auto expected = oracle::jacobi_matrix_moments({0.5, -0.25, 0.0}, {2.0, 0.0}, 9);
  for (std::size_t n = 0; n <= 9; ++n) {
    CHECK(close(moment(p, BWord::units(s, n)), scalar(expected[n])));
    CHECK(close(fock_moment(p, BWord::units(s, n)), scalar(expected[n])));
  }
}

TEST_CASE("continued fraction series reproduces moments") {
  auto rng = oracle::rng(5);
  for (Algebra a : {Algebra::scalar(), Algebra::diagonal(2), Algebra::full(2)}) {
    const auto params = gen::random_params(rng, a, 4, 0.8);
    const Element b = gen::random_element(rng, a, 0.5, false);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto series = cf_series(params, k, b, 2 * k);
      REQUIRE(series.size() == 2 * k + 1);
      for (std::size_t n = 0; n <= 2 * k; ++n) {
        INFO(a.to_string() << ", k = " << k << ", n = " << n);
        CHECK(close(series[n], moment(params, BWord::power(b, n)), 1e-8));
      }
    }
  }
}

TEST_CASE("continued fraction approximant") {
  const Algebra s = Algebra::scalar();
  const auto semi = semicircular(LinMap::identity(s));
  // Depth 1: 1 / (1 - b^2).
  CHECK(close(cf_approximant(semi, 1, scalar(0.1)), scalar(1.0 / (1.0 - 0.01))));
  // Large depth approaches the generating function (1 - sqrt(1 - 4 b^2)) / (2 b^2).
  const double b = 0.2;
  const double limit = (1.0 - std::sqrt(1.0 - 4.0 * b * b)) / (2.0 * b * b);
  CHECK(close(cf_approximant(semi, 30, scalar(b)), scalar(limit), 1e-12));
  // 1 - b^2 vanishes at b = 1.
  CHECK_THROWS_AS(cf_approximant(semi, 1, scalar(1.0)), SingularError);
  try {
    cf_approximant(semi, 1, scalar(1.0));
  } catch (const SingularError& e) {
    CHECK(std::string(e.what()).find("level 1") != std::string::npos);
  }
}

TEST_CASE("transforms") {
  const Algebra s = Algebra::scalar();
  auto rng = oracle::rng(9);
  const auto params = gen::random_params(rng, Algebra::full(2), 2);

  const auto same = boolean_power(params, LinMap::identity(Algebra::full(2)));
  CHECK(approx_equal(same, params, 5));
  const auto scaled = boolean_power(params, LinMap::scalar(Algebra::full(2), 0.5));
  CHECK(close(scaled.lambda(1), Complex(0.5) * params.lambda(1)));
  CHECK(close(scaled.lambda(2), params.lambda(2)));

  const auto phi = phi_transform(params);
  CHECK(phi.lambda(1).is_zero());
  CHECK(approx_equal(phi.alpha(1), LinMap::identity(Algebra::full(2))));
  CHECK(close(phi.lambda(3), params.lambda(2)));
  CHECK(approx_equal(strip(phi), params, 5));

  // Shifting by a scalar c turns m_n into sum_j C(n, j) c^{n-j} m_j.
  const auto base = free_poisson(scalar(1.0), LinMap::identity(s), scalar(0.5));
  const auto shifted = shift_by_delta(base, scalar(0.75));
  for (std::size_t n = 0; n <= 7; ++n) {
    Complex expected = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      expected += to_double(binomial(static_cast<long>(n), static_cast<long>(j))) *
                  std::pow(0.75, static_cast<double>(n - j)) * moment(base, BWord::units(s, j))(0, 0);
    }
    CHECK(close(moment(shifted, BWord::units(s, n)), scalar(expected)));
  }
}

TEST_CASE("amplification acts blockwise") {
  auto rng = oracle::rng(21);
  const Algebra d2 = Algebra::diagonal(2);
  const auto params = gen::random_params(rng, d2, 2);
  const auto big = amplify(params, 2);
  CHECK(big.algebra == Algebra::full(4));
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto w = gen::random_word(rng, d2, n);
    CHECK(close(moment(big, amplify(w, 2)), amplify(moment(params, w), 2)));
  }
}

TEST_CASE("free Meixner semigroup parameters") {
  auto rng = oracle::rng(13);
  const Algebra d2 = Algebra::diagonal(2);
  const Element lambda = gen::random_element(rng, d2);
  const LinMap alpha = gen::random_cp_map(rng, d2);
  const LinMap eta1 = gen::random_cp_map(rng, d2);
  const LinMap eta2 = gen::random_cp_map(rng, d2);
  const auto p1 = meixner(lambda, alpha, eta1);
  const auto form = recognize_meixner(p1);
  REQUIRE(form.has_value());
  CHECK(close(form->lambda, lambda));
  CHECK(approx_equal(form->alpha, alpha));
  CHECK(approx_equal(form->eta, eta1));
  const auto sum = meixner_convolve(p1, meixner(lambda, alpha, eta2));
  CHECK(approx_equal(sum, meixner(lambda, alpha, eta1 + eta2), 6));
  CHECK_THROWS_AS(meixner_convolve(p1, meixner(lambda, eta1, eta2)), DomainError);
  CHECK_FALSE(recognize_meixner(gen::random_params(rng, d2, 3)).has_value());
}

TEST_CASE("free binomial parameters") {
  const Algebra s = Algebra::scalar();
  for (double t : {1.0, 1.5, 2.0, 3.0}) {
    const auto p = free_binomial(LinMap::scalar(s, t), LinMap::identity(s));
    for (int n = 0; n <= 6; ++n) {
      CHECK(close(moment(p, BWord::units(s, 2 * static_cast<std::size_t>(n))), scalar(free_binomial_moment(n, t))));
    }
  }
  const Algebra m2 = Algebra::full(2);
  Matrix off(2, 2);
  off << 0.0, 1.0, 1.0, 0.0;
  const Element a(m2, off);
  const Algebra d2 = Algebra::diagonal(2);
  const BWord w{d2, {Element::unit(d2), Element::diag(d2, {2.0, 3.0}), Element::unit(d2)}};
  // a diag(2, 3) a = diag(3, 2), scaled by m_1(t) = t.
  CHECK(close(free_binomial_word_moment(a, w, 1.5), Element::diag(d2, {4.5, 3.0})));
  CHECK(free_binomial_word_moment(a, BWord::units(d2, 3), 1.5).is_zero());
  CHECK_THROWS_AS(free_binomial_word_moment(Element::unit(m2), w, 1.5), DomainError);
}

TEST_CASE("Poisson limit error decays like 1/N") {
  const Algebra s = Algebra::scalar();
  double previous = 0.0;
  for (long n : {10L, 100L, 1000L}) {
    const auto limit = poisson_limit_check(n, scalar(1.0), scalar(1.0), LinMap::identity(s), 4);
    const auto& got = limit.convolved_moments.entries;
    const auto& want = limit.target_moments.entries;
    REQUIRE(got.size() == want.size());
    double err = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      err = std::max(err, (got[i].second.matrix() - want[i].second.matrix()).norm());
    }
    if (previous > 0.0) {
      CHECK(previous / err > 5.0);
      CHECK(previous / err < 20.0);
    }
    previous = err;
  }
}

TEST_CASE("moment tables and word helpers") {
  const Algebra d2 = Algebra::diagonal(2);
  const auto words = standard_words(d2, 6);
  // Unit words, then all basis tuples through degree 4, then (1, e, ..., e, 1).
  CHECK(words.size() == 1 + 1 + (1 + 2) + (1 + 4) + (1 + 8) + (1 + 2) + (1 + 2));
  CHECK(standard_words(Algebra::scalar(), 5).size() == 6);
  const auto table = moment_table(semicircular(LinMap::identity(d2)), 6);
  CHECK(table.entries.size() == words.size());
  for (const BWord& w : consistency_words(d2)) CHECK(table.find(w) != nullptr);
  const Element* found = table.find(BWord::units(d2, 2));
  REQUIRE(found != nullptr);
  CHECK(close(*found, Element::unit(d2)));
  CHECK(table.find(BWord::units(d2, 7)) == nullptr);

  const BWord u{d2, {Element::diag(d2, {1.0, 2.0}), Element::diag(d2, {3.0, 4.0})}};
  const BWord v{d2, {Element::diag(d2, {5.0, 6.0}), Element::unit(d2)}};
  const BWord uv = u * v;
  CHECK(uv.degree() == 2);
  CHECK(close(uv.coeffs[1], Element::diag(d2, {15.0, 24.0})));
  CHECK(close(u.adjoint().coeffs[0], u.coeffs[1]));
}
