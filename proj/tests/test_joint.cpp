#include "generators.hpp"
#include "oracles.hpp"

#include <ncfree/errors.hpp>
#include <ncfree/joint.hpp>

#include <doctest/doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace ncfree;

namespace {

bool close(const Element& a, const Element& b, double rel = 1e-9) {
  const double scale = std::max({1.0, a.matrix().norm(), b.matrix().norm()});
  return (a.matrix() - b.matrix()).norm() <= rel * scale;
}

std::vector<Color> coloring(std::size_t degree, unsigned mask) {
  std::vector<Color> c;
  for (std::size_t i = 0; i < degree; ++i) c.push_back(((mask >> i) & 1u) != 0 ? Color::red : Color::blue);
  return c;
}

JointModel bernoulli_pair(Algebra d2) {
  const Element zero = Element::zero(d2);
  return {bernoulli(zero, zero, LinMap::flip(d2)), bernoulli(zero, zero, LinMap::identity(d2))};
}

}  // namespace

TEST_CASE("single-color words reduce to the marginal") {
  auto rng = oracle::rng(17);
  const Algebra d2 = Algebra::diagonal(2);
  const JointModel model{gen::random_params(rng, d2, 2), gen::random_params(rng, d2, 2)};
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto w = gen::random_word(rng, d2, n);
    CHECK(close(joint_moment(model, ColoredWord::colored(w, coloring(n, 0))), moment(model.params1, w)));
    CHECK(close(joint_moment(model, ColoredWord::colored(w, coloring(n, (1u << n) - 1))), moment(model.params2, w)));
  }
}

TEST_CASE("two-color sum agrees with the freeness recursion") {
  auto rng = oracle::rng(23);
  for (Algebra a : {Algebra::scalar(), Algebra::diagonal(2), Algebra::full(2)}) {
    for (int trial = 0; trial < 4; ++trial) {
      const JointModel model{gen::random_params(rng, a, 2), gen::random_params(rng, a, 2)};
      for (std::size_t n = 1; n <= 5; ++n) {
        const auto w = gen::random_word(rng, a, n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          const auto cw = ColoredWord::colored(w, coloring(n, mask));
          INFO(a.to_string() << ", trial " << trial << ", degree " << n << ", mask " << mask);
          CHECK(close(joint_moment(model, cw), joint_moment_free_recursion(model, cw)));
        }
      }
    }
  }
}

TEST_CASE("swapping marginals and colors is a symmetry") {
  auto rng = oracle::rng(29);
  const Algebra m2 = Algebra::full(2);
  const JointModel model{gen::random_params(rng, m2, 2), gen::random_params(rng, m2, 1)};
  const auto w = gen::random_word(rng, m2, 4);
  const unsigned mask = 0b0110;
  const auto cw = ColoredWord::colored(w, coloring(4, mask));
  const auto flipped = ColoredWord::colored(w, coloring(4, ~mask & 0b1111u));
  CHECK(close(joint_moment(model, cw), joint_moment(model.swapped(), flipped)));
}

TEST_CASE("E_pi and color checks") {
  const Algebra s = Algebra::scalar();
  const auto scalar = [&](double v) { return Element::scalar(s, v); };
  const JointModel model{semicircular(LinMap::scalar(s, 2.0), scalar(0.5)),
                         semicircular(LinMap::scalar(s, 3.0), scalar(-1.0))};
  const auto w = ColoredWord::units(s, {Color::blue, Color::red, Color::red, Color::blue});
  // (1,4) blue around (2,3) red: alpha^b_1 alpha^r_1.
  CHECK(close(e_pi(model, w, ColoredPartition::parse("(1,4):b (2,3):r")), scalar(6.0)));
  // Singletons take their own color's lambda.
  CHECK(close(e_pi(model, w, ColoredPartition::parse("(1):b (2):r (3):r (4):b")), scalar(0.25)));
  CHECK_THROWS_AS(e_pi(model, w, ColoredPartition::parse("(1,4):r (2,3):r")), std::invalid_argument);
  // Free independence: E[X1 X2 X2 X1] = E[X1 E[X2^2] X1].
  const double second_red = 3.0 + 1.0;
  CHECK(close(joint_moment(model, w), scalar((2.0 + 0.25) * second_red)));
}

TEST_CASE("free convolution of free Meixner laws is the semigroup") {
  auto rng = oracle::rng(31);
  for (Algebra a : {Algebra::scalar(), Algebra::diagonal(2)}) {
    const Element lambda = gen::random_element(rng, a, 0.7);
    const LinMap alpha = gen::random_cp_map(rng, a, 0.7);
    const LinMap eta1 = gen::random_cp_map(rng, a, 0.7);
    const LinMap eta2 = gen::random_cp_map(rng, a, 0.7);
    const JointModel model{meixner(lambda, alpha, eta1), meixner(lambda, alpha, eta2)};
    const auto sum = meixner_convolve(model.params1, model.params2);
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto w = gen::random_word(rng, a, n);
      INFO(a.to_string() << ", degree " << n);
      CHECK(close(free_convolve_word(model, w), moment(sum, w)));
    }
  }
}

TEST_CASE("semicircular sums stay semicircular") {
  const Algebra d2 = Algebra::diagonal(2);
  const JointModel model{semicircular(LinMap::flip(d2)), semicircular(LinMap::identity(d2))};
  const auto table = free_convolve_moments(model, 4);
  const auto result = verify_jacobi_consistency(table, d2);
  REQUIRE(result.consistent());
  const auto expected = semicircular(LinMap::flip(d2) + LinMap::identity(d2));
  CHECK(approx_equal(*result.params, expected, 2, 1e-9, 1e-9));
}

TEST_CASE("Bernoulli(flip) plus Bernoulli(id) has no Jacobi parameters") {
  const Algebra d2 = Algebra::diagonal(2);
  const auto table = free_convolve_moments(bernoulli_pair(d2), 4);
  const auto result = verify_jacobi_consistency(table, d2);
  REQUIRE_FALSE(result.consistent());
  REQUIRE(result.witness.has_value());
  const auto& witness = *result.witness;
  CHECK(witness.residual > 1e-6);
  REQUIRE_FALSE(witness.constraints.empty());

  // The witness rows alone must already be inconsistent: rank [A | b] > rank A.
  const auto rows = static_cast<Eigen::Index>(witness.constraints.size());
  const auto cols = static_cast<Eigen::Index>(witness.unknowns.size());
  Matrix a(rows, cols);
  Matrix aug(rows, cols + 1);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& c = witness.constraints[static_cast<std::size_t>(r)];
    REQUIRE(static_cast<Eigen::Index>(c.coefficients.size()) == cols);
    for (Eigen::Index j = 0; j < cols; ++j) a(r, j) = aug(r, j) = c.coefficients[static_cast<std::size_t>(j)];
    aug(r, cols) = c.rhs;
  }
  Eigen::ColPivHouseholderQR<Matrix> qa(a);
  Eigen::ColPivHouseholderQR<Matrix> qaug(aug);
  qa.setThreshold(1e-9);
  qaug.setThreshold(1e-9);
  CHECK(qaug.rank() > qa.rank());
}

TEST_CASE("consistency input validation") {
  const Algebra d2 = Algebra::diagonal(2);
  MomentTable empty{d2, {}};
  CHECK_THROWS_AS(verify_jacobi_consistency(empty, d2), std::invalid_argument);
  const Element one = Element::unit(d2);
  const JointModel shifted{semicircular(LinMap::identity(d2), one), semicircular(LinMap::identity(d2))};
  CHECK_THROWS_AS(verify_jacobi_consistency(free_convolve_moments(shifted, 4), d2), DomainError);
  CHECK(consistency_words(d2).size() > 0);
}

TEST_CASE("the 2x2 model") {
  auto rng = oracle::rng(37);
  for (int i = 0; i < 10; ++i) {
    const double r = gen::uniform(rng, 2.2, 5.0);
    const Complex lambda = std::polar(r, gen::uniform(rng, -3.0, 3.0));
    const Complex gamma = std::polar(gen::uniform(rng, 2.2, 5.0), gen::uniform(rng, -3.0, 3.0));
    if (std::abs(1.0 / (lambda * gamma)) >= 0.25) continue;
    const auto report = two_by_two_model_check(lambda, gamma);
    INFO("lambda = " << lambda << ", gamma = " << gamma);
    CHECK(report.residual < 1e-8);
    CHECK(report.inverse_residual < 1e-8);
    CHECK(report.linearization_residual < 1e-8);
    CHECK(report.series_terms > 0);
  }
  for (Complex z : {Complex(3.0, 0.0), Complex(0.5, 2.5), Complex(-4.0, 1.0)}) {
    const auto report = two_by_two_model_check(z, z);
    const Complex root = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
    CHECK(std::abs(report.f_conv_closed[0] - root) < 1e-10);
    CHECK(std::abs(report.f_conv_closed[1] - root) < 1e-10);
    CHECK(std::abs(report.f_conv_series[0] - root) < 1e-8);
  }
  CHECK_THROWS_AS(two_by_two_model_check(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(two_by_two_model_check(0.0, 5.0), DomainError);
}
