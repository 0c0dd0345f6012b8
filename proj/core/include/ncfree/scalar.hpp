#pragma once

// Scalar-valued machinery: atomic measures nu_k, Chebyshev ratios, free and
// Boolean cumulants, the F-transform checks and the TCNC_2^{k,k} recursion.

#include "ncfree/numeric.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ncfree {

using Cplx = std::complex<double>;

/// U_k by U_0 = 1, U_1 = z, U_{k+1} = z U_k - U_{k-1}.
Cplx chebyshev_u(int k, Cplx z);
/// Integer coefficients of U_k, constant term first.
std::vector<BigInt> chebyshev_u_coeffs(int k);

struct AtomicMeasure {
  std::vector<double> atoms;
  std::vector<double> weights;

  /// Weights must sum to 1 within 1e-12 and be >= -1e-12; small negative
  /// weights are clamped to 0. Throws DomainError otherwise.
  void validate_and_clamp();
  double moment(int n) const;
  /// G(z) = sum a_j / (z - x_j). Throws DomainError when z is within 1e-6
  /// of an atom.
  Cplx cauchy(Cplx z) const;
};

/// Atoms 2cos(j pi/(k+1)), weights (1 - cos(2 j pi/(k+1)))/(k+1); nu_1 = delta_0.
AtomicMeasure nu_k(int k);

/// Top-left entry of X_k^n for the k x k zero-diagonal tridiagonal 0/1 matrix.
BigInt tridiagonal_moment(int k, int n);
/// Moments m_0..m_max of nu_k via tridiagonal_moment.
std::vector<BigInt> nu_k_moments(int k, int max_degree);
/// Moments m_0..m_max read off U_{k-1}/U_k = sum m_n z^{-n-1} by exact long
/// division in 1/z.
std::vector<BigInt> chebyshev_ratio_moments(int k, int max_degree);

std::vector<Rational> to_rational(const std::vector<BigInt>& values);

/// Free cumulants kappa_1..kappa_N (index 0 holds 0) from m_0..m_N, via
/// M(z) = 1 + sum_s kappa_s z^s M(z)^s. Requires m_0 = 1.
std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& m);
std::vector<Rational> cumulants_to_moments(const std::vector<Rational>& kappa);

/// Moments m_0..m_N of mu1 + mu2 (free) by adding cumulants.
std::vector<Rational> free_convolve_scalar(const std::vector<Rational>& m1, const std::vector<Rational>& m2,
                                           std::size_t max_degree);

/// Boolean cumulants: B(z) = 1 - 1/M(z), coefficients 1..N (index 0 holds 0).
std::vector<Rational> boolean_cumulants(const std::vector<Rational>& m);
std::vector<Rational> boolean_cumulants_to_moments(const std::vector<Rational>& b);

/// |G_{nu_n}(z) - 1/(z - G_{nu_{n-1}}(z))| with both sides as atomic sums.
double g_recursion_check(int n, Cplx z);

/// Cauchy transform of nu_n + nu_n at z. n = 2 uses the arcsine closed form,
/// n >= 3 the J-fraction built from the exact moments m_0..m_order.
Cplx mu_nn_cauchy(int n, Cplx z, int order = 40);

/// |F_{mu_{n,n}}(z + G_{nu_{n-1}}(z)) - (z - G_{nu_{n-1}}(z))|.
double subordination_check(int n, Cplx z, int order = 40);

/// Jacobi coefficients (a_0.., b_1..) of a moment sequence by the Stieltjes
/// procedure in exact arithmetic; stops early when some b_j vanishes.
struct JacobiCoefficients {
  std::vector<Rational> a;
  std::vector<Rational> b;  // b[j] couples levels j and j+1 (b_{j+1} in 1-based form)
};
JacobiCoefficients stieltjes(const std::vector<Rational>& m);
/// 1/(z - a_0 - b_1/(z - a_1 - ...)) truncated at the available depth.
Cplx j_fraction(const JacobiCoefficients& jc, Cplx z);

struct RecursionTrace {
  struct Term {
    int index = 0;  // i for S terms, j for T terms
    BigInt value;
  };
  int k = 0;
  int n = 0;
  std::vector<Term> s_terms;
  std::vector<Term> t_terms;
  BigInt s;
  BigInt t;
  BigInt moment;

  std::string to_string() const;
};

/// M^{(k)}_{2n} for n = 1..n_max by the S - T recursion with nu_{k-1}
/// moments. If `trace` is given it receives one entry per n.
std::vector<BigInt> tcnc_recursion(int k, int n_max, std::vector<RecursionTrace>* trace = nullptr);

enum class CountMethod { dynamic, enumerate, recursion, cumulant };

/// |TCNC_2^{k,k}(2n)| for n = 1..n_max. `dynamic` and `enumerate` count the
/// partitions, `recursion` runs tcnc_recursion and `cumulant` reads the even
/// moments of nu_k + nu_k off added free cumulants. k = kUnbounded is
/// accepted by every method.
std::vector<BigInt> tcnc2_diagonal_counts(int k, int n_max, CountMethod method);

/// |TCNC_2^{k,l}(n)| by one method; `cumulant` uses nu_k + nu_l and
/// `recursion` requires k == l (std::invalid_argument otherwise).
BigInt tcnc2_count(int k, int l, int n, CountMethod method);

/// Sum over NC_2(2n) of t^{|outer|} (t-1)^{|inner|}.
Rational free_binomial_pairing_sum(int n, const Rational& t);

/// Coefficients 0..N of (t - 2 - t sqrt(1 - 4(t-1)z^2)) / (2(t^2 z^2 - 1)).
/// Requires t >= 1 and N <= 40.
std::vector<Rational> free_binomial_series(const Rational& t, int max_degree);

}  // namespace ncfree
