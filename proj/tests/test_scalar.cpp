#include "oracles.hpp"

#include <ncfree/errors.hpp>
#include <ncfree/jacobi.hpp>
#include <ncfree/partitions.hpp>
#include <ncfree/scalar.hpp>

#include <doctest/doctest.h>

#include <cmath>
#include <numbers>

using namespace ncfree;

namespace {

// |TCNC_2^{k,k}(n)| for n = 2, 4, ..., 12; the last row is every k > 6.
const std::vector<std::vector<long>> kTable = {
    {2, 6, 20, 70, 252, 924},      {2, 8, 38, 196, 1062, 5948},   {2, 8, 40, 222, 1308, 8014},
    {2, 8, 40, 224, 1342, 8404},   {2, 8, 40, 224, 1344, 8446},   {2, 8, 40, 224, 1344, 8448},
};

std::vector<Rational> catalan_moments(int max_degree, int scale = 1) {
  std::vector<Rational> m;
  for (int n = 0; n <= max_degree; ++n) {
    m.push_back(n % 2 == 0 ? Rational(oracle::catalan(n / 2) * boost::multiprecision::pow(BigInt(scale), n / 2))
                           : Rational(0));
  }
  return m;
}

}  // namespace

TEST_CASE("Chebyshev polynomials") {
  for (int k = 0; k <= 8; ++k) {
    const double theta = 0.7;
    const Cplx value = chebyshev_u(k, 2.0 * std::cos(theta));
    CHECK(std::abs(value - std::sin((k + 1) * theta) / std::sin(theta)) < 1e-12);
  }
  CHECK(chebyshev_u_coeffs(3) == std::vector<BigInt>{0, -2, 0, 1});
  CHECK(chebyshev_u_coeffs(0) == std::vector<BigInt>{1});
}

TEST_CASE("nu_k four ways") {
  for (int k = 1; k <= 6; ++k) {
    const AtomicMeasure nu = nu_k(k);
    const auto tri = nu_k_moments(k, 12);
    const auto ratio = chebyshev_ratio_moments(k, 12);
    CHECK(tri == ratio);
    for (int n = 0; n <= 12; ++n) {
      INFO("k = " << k << ", n = " << n);
      const BigInt paths = count_family(FamilyDescriptor::nc2(k), n);
      CHECK(tri[static_cast<std::size_t>(n)] == paths);
      const double exact = to_double(paths);
      CHECK(std::abs(nu.moment(n) - exact) <= 1e-9 * std::max(1.0, exact));
    }
  }
  const AtomicMeasure delta = nu_k(1);
  CHECK(delta.atoms.size() == 1);
  CHECK(delta.moment(0) == doctest::Approx(1.0));
  CHECK(std::abs(delta.moment(2)) < 1e-12);
}

TEST_CASE("atomic measure validation") {
  AtomicMeasure bad{{0.0, 1.0}, {0.5, 0.6}};
  CHECK_THROWS_AS(bad.validate_and_clamp(), DomainError);
  AtomicMeasure clamp{{0.0, 1.0}, {1.0 + 1e-13, -1e-13}};
  clamp.validate_and_clamp();
  CHECK(clamp.weights[1] == 0.0);
  CHECK_THROWS_AS(nu_k(3).cauchy(Cplx(0.0, 0.0)), DomainError);
}

TEST_CASE("free cumulants") {
  const auto semi = catalan_moments(12);
  const auto kappa = moments_to_cumulants(semi);
  for (std::size_t s = 1; s < kappa.size(); ++s) CHECK(kappa[s] == (s == 2 ? 1 : 0));
  CHECK(cumulants_to_moments(kappa) == semi);

  CHECK(free_convolve_scalar(semi, semi, 12) == catalan_moments(12, 2));

  // Free Poisson with rate 1: every free cumulant is 1; moments are Catalan.
  std::vector<Rational> ones(9, 1);
  ones[0] = 0;
  const auto poisson = cumulants_to_moments(ones);
  for (int n = 0; n <= 8; ++n) CHECK(poisson[static_cast<std::size_t>(n)] == Rational(oracle::catalan(n)));
}

TEST_CASE("Boolean cumulants") {
  // Symmetric Bernoulli: m_{2n} = 1, only b_2 = 1.
  std::vector<Rational> m(11, 0);
  for (std::size_t n = 0; n < m.size(); n += 2) m[n] = 1;
  const auto b = boolean_cumulants(m);
  for (std::size_t s = 1; s < b.size(); ++s) CHECK(b[s] == (s == 2 ? 1 : 0));
  CHECK(boolean_cumulants_to_moments(b) == m);
}

TEST_CASE("TCNC2 diagonal counts agree across methods") {
  for (int row = 0; row < 6; ++row) {
    const int k = row + 2;
    for (auto method : {CountMethod::dynamic, CountMethod::enumerate, CountMethod::recursion, CountMethod::cumulant}) {
      const auto counts = tcnc2_diagonal_counts(row == 5 ? kUnbounded : k, 6, method);
      REQUIRE(counts.size() == 6);
      for (int n = 0; n < 6; ++n) {
        INFO("k = " << k << ", n = " << 2 * (n + 1) << ", method = " << static_cast<int>(method));
        CHECK(counts[static_cast<std::size_t>(n)] == kTable[static_cast<std::size_t>(row)][static_cast<std::size_t>(n)]);
      }
    }
  }
  for (int n = 1; n <= 6; ++n) {
    CHECK(kTable[0][static_cast<std::size_t>(n - 1)] == binomial(2 * n, n));
    CHECK(kTable[5][static_cast<std::size_t>(n - 1)] == (BigInt(1) << n) * oracle::catalan(n));
  }
}

TEST_CASE("recursion matches brute force beyond the table") {
  for (int k = 2; k <= 4; ++k) {
    const auto rec = tcnc_recursion(k, 5);
    for (int n = 1; n <= 5; ++n) {
      CHECK(rec[static_cast<std::size_t>(n - 1)] == oracle::count_tcnc(2 * n, k, k, true));
    }
  }
}

TEST_CASE("single TCNC2 counts with unequal bounds") {
  for (int n = 0; n <= 8; ++n) {
    for (auto [k, l] : {std::pair{1, 3}, {2, 3}, {3, 2}, {2, kUnbounded}, {4, 4}}) {
      INFO("n = " << n << ", k = " << k << ", l = " << l);
      const BigInt expected = oracle::count_tcnc(n, k, l, true);
      CHECK(tcnc2_count(k, l, n, CountMethod::dynamic) == expected);
      CHECK(tcnc2_count(k, l, n, CountMethod::enumerate) == expected);
      CHECK(tcnc2_count(k, l, n, CountMethod::cumulant) == expected);
      if (k == l) CHECK(tcnc2_count(k, l, n, CountMethod::recursion) == expected);
    }
  }
  CHECK_THROWS_AS(tcnc2_count(2, 3, 4, CountMethod::recursion), std::invalid_argument);
}

TEST_CASE("recursion trace for k = 2, n = 3") {
  std::vector<RecursionTrace> trace;
  const auto m = tcnc_recursion(2, 3, &trace);
  REQUIRE(trace.size() == 3);
  const RecursionTrace& step = trace[2];
  CHECK(step.moment == 20);
  CHECK(step.s == 20);
  CHECK(step.t == 0);
  REQUIRE(step.s_terms.size() == 3);
  CHECK(step.s_terms[0].index == 3);
  CHECK(step.s_terms[0].value == 20);
  CHECK(step.s_terms[1].value == 0);
  CHECK(step.s_terms[2].value == 0);
  REQUIRE(step.t_terms.size() == 1);
  CHECK(step.t_terms[0].value == 0);
  CHECK(step.to_string().find("M_6^(2) = S - T = 20 - 0 = 20") != std::string::npos);
  CHECK(trace[0].moment == 2);
  CHECK(trace[1].moment == 6);
}

TEST_CASE("Cauchy transform recursion and subordination") {
  for (Cplx z : {Cplx(1.0, 2.0), Cplx(0.0, 2.0), Cplx(3.0, 0.5)}) {
    for (int n = 2; n <= 6; ++n) {
      INFO("n = " << n << ", z = " << z);
      CHECK(g_recursion_check(n, z) < 1e-12);
      CHECK(subordination_check(n, z) < 1e-6);
    }
  }
  for (Cplx z : {Cplx(-0.5, 1.0), Cplx(0.2, 0.3)}) {
    for (int n = 2; n <= 6; ++n) CHECK(g_recursion_check(n, z) < 1e-12);
  }
}

TEST_CASE("Stieltjes procedure recovers constant coefficients") {
  const auto jc = stieltjes(catalan_moments(40));
  REQUIRE(jc.a.size() >= 20);
  for (const auto& a : jc.a) CHECK(a == 0);
  for (const auto& b : jc.b) CHECK(b == 1);
  const Cplx z(0.3, 1.1);
  const Cplx exact = (z - std::sqrt(z - 2.0) * std::sqrt(z + 2.0)) / 2.0;
  CHECK(std::abs(j_fraction(jc, z) - exact) < 1e-8);

  const auto finite = stieltjes(to_rational(nu_k_moments(3, 12)));
  CHECK(finite.b.size() == 2);
}

TEST_CASE("free binomial three ways") {
  for (int n = 0; n <= 8; ++n) CHECK(free_binomial_pairing_sum(n, 2) == Rational(binomial(2 * n, n)));
  for (const Rational& t : {Rational(1), Rational(3, 2), Rational(3)}) {
    const auto series = free_binomial_series(t, 17);
    for (int n = 0; n <= 8; ++n) {
      INFO("t = " << t << ", n = " << n);
      CHECK(series[static_cast<std::size_t>(2 * n)] == free_binomial_pairing_sum(n, t));
      CHECK(series[static_cast<std::size_t>(2 * n + 1)] == 0);
      CHECK(free_binomial_moment(n, t) == free_binomial_pairing_sum(n, t));
    }
  }
  CHECK_THROWS(free_binomial_series(Rational(1, 2), 8));
}
