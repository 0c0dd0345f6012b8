#include "generators.hpp"
#include "oracles.hpp"

#include <ncfree/errors.hpp>
#include <ncfree/matrix_algebra.hpp>

#include <doctest/doctest.h>

using namespace ncfree;

TEST_CASE("algebra descriptors") {
  CHECK(Algebra::full(3).to_string() == "M_3");
  CHECK(Algebra::diagonal(2).to_string() == "D_2");
  CHECK(Algebra::scalar() == Algebra::full(1));
  CHECK(basis(Algebra::full(2)).size() == 4);
  CHECK(basis(Algebra::diagonal(3)).size() == 3);
}

TEST_CASE("element arithmetic") {
  const Algebra m2 = Algebra::full(2);
  const Algebra d2 = Algebra::diagonal(2);
  const Element e12 = Element::matrix_unit(m2, 0, 1);
  const Element e21 = Element::matrix_unit(m2, 1, 0);
  CHECK(approx_equal(e12 * e21, Element::matrix_unit(m2, 0, 0)));
  CHECK(approx_equal(e12.adjoint(), e21));
  CHECK((e12 + e21).is_self_adjoint());
  CHECK_FALSE(e12.is_self_adjoint());
  CHECK((e12 - e12).is_zero());
  CHECK((Complex(2.0) * e12)(0, 1) == Complex(2.0));
  CHECK((e12 + e21).norm() == doctest::Approx(1.0));

  const Element d = Element::diag(d2, {2.0, 4.0});
  CHECK(approx_equal(d.inverse(), Element::diag(d2, {0.5, 0.25})));
  CHECK((d * d).algebra().kind == AlgebraKind::diagonal);
  CHECK((d * Element::unit(m2)).algebra().kind == AlgebraKind::full);
  CHECK_THROWS_AS(Element::matrix_unit(m2, 0, 0).inverse(), SingularError);
  CHECK_THROWS_AS(d * Element::unit(Algebra::full(3)), AlgebraMismatch);
  CHECK_THROWS(Element(d2, e12.matrix()));
}

TEST_CASE("diagonal expectation") {
  const Algebra m2 = Algebra::full(2);
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Element e = diagonal_expectation(Element(m2, m));
  CHECK(e.algebra() == Algebra::diagonal(2));
  CHECK(approx_equal(e, Element::diag(Algebra::diagonal(2), {1.0, 4.0})));
}

TEST_CASE("linear maps") {
  const Algebra m2 = Algebra::full(2);
  auto rng = oracle::rng(41);
  const Element b = gen::random_element(rng, m2, 1.0, false);

  CHECK(approx_equal(LinMap::identity(m2)(b), b));
  CHECK(LinMap::zero(m2)(b).is_zero());
  CHECK(approx_equal(LinMap::scalar(m2, 3.0)(b), Complex(3.0) * b));
  const Element flipped = LinMap::flip(m2)(b);
  CHECK(flipped(0, 0) == b(1, 1));
  CHECK(flipped(0, 1) == b(1, 0));

  const LinMap f = gen::random_cp_map(rng, m2);
  const LinMap g = gen::random_map(rng, m2);
  CHECK(approx_equal(compose(f, g)(b), f(g(b))));
  CHECK(approx_equal((f + g)(b), f(b) + g(b)));
  CHECK(approx_equal((f - g)(b), f(b) - g(b)));
  CHECK(approx_equal((Complex(0.5, 1.0) * g)(b), Complex(0.5, 1.0) * g(b)));

  // Kraus dense form agrees with direct application.
  const LinMap dense = LinMap::dense(m2, f.dense_matrix());
  CHECK(approx_equal(dense(b), f(b)));
  CHECK(approx_equal(dense, f));

  // Nonnegative multiples of Kraus maps stay in Kraus form.
  CHECK((Complex(2.0) * f).is_kraus());
  CHECK_FALSE((Complex(-2.0) * f).is_kraus());
}

TEST_CASE("complete positivity") {
  const Algebra m2 = Algebra::full(2);
  const Algebra d2 = Algebra::diagonal(2);
  auto rng = oracle::rng(43);
  CHECK(gen::random_cp_map(rng, m2).is_cp());
  CHECK(LinMap::dense(m2, gen::random_cp_map(rng, m2).dense_matrix()).is_cp());
  // The transpose is positive but not completely positive.
  Matrix transpose = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) transpose(i + 2 * j, j + 2 * i) = 1.0;
  }
  const LinMap t = LinMap::dense(m2, transpose);
  CHECK(approx_equal(t(Element::matrix_unit(m2, 0, 1)), Element::matrix_unit(m2, 1, 0)));
  CHECK_FALSE(t.is_cp());
  CHECK_FALSE(LinMap::scalar(m2, -1.0).is_cp());

  CHECK(gen::random_cp_map(rng, d2).is_cp());
  CHECK(LinMap::flip(d2).is_cp());
  CHECK_FALSE((LinMap::flip(d2) - LinMap::identity(d2)).is_cp());
}

TEST_CASE("maps on the diagonal algebra") {
  const Algebra d2 = Algebra::diagonal(2);
  const LinMap flip = LinMap::flip(d2);
  const Element b = Element::diag(d2, {1.0, 5.0});
  CHECK(approx_equal(flip(b), Element::diag(d2, {5.0, 1.0})));
  CHECK(flip(b).algebra() == d2);
  CHECK_THROWS_AS(flip(Element::unit(Algebra::full(2))), AlgebraMismatch);
  // Diagonal maps are equal when they agree on D_2.
  Matrix dense = Matrix::Zero(4, 4);
  dense(0, 3) = 1.0;
  dense(3, 0) = 1.0;
  CHECK(approx_equal(LinMap::dense(d2, dense), flip));
  CHECK_FALSE(approx_equal(LinMap::dense(Algebra::full(2), dense), LinMap::flip(Algebra::full(2))));
}

TEST_CASE("amplification and block elements") {
  const Algebra m2 = Algebra::full(2);
  auto rng = oracle::rng(47);
  const Element b = gen::random_element(rng, m2, 1.0, false);
  const Element big = amplify(b, 3);
  CHECK(big.algebra() == Algebra::full(6));
  CHECK(big(2, 3) == b(0, 1));
  CHECK(big(0, 2) == Complex(0.0));

  const LinMap f = gen::random_cp_map(rng, m2);
  const LinMap g = amplify(f, 2);
  const Element z = Element::zero(m2);
  const Element x = gen::random_element(rng, m2, 1.0, false);
  const Element y = gen::random_element(rng, m2, 1.0, false);
  const Element block = block_element({{x, y}, {z, x}});
  const Element image = g(block);
  CHECK(approx_equal(image, block_element({{f(x), f(y)}, {z, f(x)}})));
}

TEST_CASE("Gram positivity") {
  const Algebra m2 = Algebra::full(2);
  auto rng = oracle::rng(53);
  const Element a = gen::random_element(rng, m2, 1.0, false);
  const Element c = gen::random_element(rng, m2, 1.0, false);
  // [a* a, a* c; c* a, c* c] is positive.
  CHECK(gram_psd_check({{a.adjoint() * a, a.adjoint() * c}, {c.adjoint() * a, c.adjoint() * c}}));
  const Element one = Element::unit(m2);
  CHECK_FALSE(gram_psd_check({{one, Complex(2.0) * one}, {Complex(2.0) * one, one}}));
  // Not Hermitian.
  CHECK_FALSE(gram_psd_check({{one, one}, {Complex(0.0) * one, one}}));
}
