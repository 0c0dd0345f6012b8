#pragma once

// B-valued Jacobi parameter sequences and the distributions they generate.
//
// Parameter index convention: a block sitting under m pair blocks uses
// lambda_{m+1} / alpha_{m+1}; indices start at 1.

#include "ncfree/matrix_algebra.hpp"
#include "ncfree/numeric.hpp"
#include "ncfree/partitions.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ncfree {

/// Degree cap for the moment engines: NCFREE_DEGREE_CAP if set, else 16.
std::size_t default_degree_cap();

struct JacobiParams {
  Algebra algebra = Algebra::scalar();
  std::vector<Element> head_lambda;
  std::vector<LinMap> head_alpha;
  Element tail_lambda;
  LinMap tail_alpha;
  bool positive = false;

  /// lambda_i and alpha_i, i >= 1.
  const Element& lambda(std::size_t i) const;
  const LinMap& alpha(std::size_t i) const;

  /// Number of explicitly stored levels (max head length).
  std::size_t head_length() const { return std::max(head_lambda.size(), head_alpha.size()); }

  /// Checks algebra agreement of every entry, and when `positive` is set,
  /// self-adjointness of the lambdas and complete positivity of the alphas.
  /// Throws AlgebraMismatch or DomainError.
  void validate() const;

  /// Builds from explicit heads; tails default to zero.
  static JacobiParams from_sequences(Algebra a, std::vector<Element> lambdas, std::vector<LinMap> alphas,
                                     Element tail_lambda, LinMap tail_alpha);
  /// Constant sequences (lambda, lambda, ...; alpha, alpha, ...).
  static JacobiParams constant(Element lambda, LinMap alpha);
};

/// Entrywise approximate equality of the first `levels` parameters.
bool approx_equal(const JacobiParams& a, const JacobiParams& b, std::size_t levels, double rel = kRelTol,
                  double abs = kAbsTol);

/// b_0 X b_1 X ... X b_n.
struct BWord {
  Algebra algebra = Algebra::scalar();
  std::vector<Element> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  void validate() const;

  /// All coefficients equal to the unit.
  static BWord units(Algebra a, std::size_t degree);
  /// (1, b, b, ..., b): the degree-n term of the moment generating function.
  static BWord power(const Element& b, std::size_t degree);
  /// Word adjoint: b_n^* X ... X b_0^*.
  BWord adjoint() const;
  /// Concatenation u v, multiplying the touching coefficients.
  friend BWord operator*(const BWord& u, const BWord& v);
};

/// Moments as (word, value) pairs in generation order.
struct MomentTable {
  Algebra algebra = Algebra::scalar();
  std::vector<std::pair<BWord, Element>> entries;

  /// Exact lookup on coefficient matrices; nullptr when absent.
  const Element* find(const BWord& w) const;
};

/// Degrees up to which standard_words lists every basis tuple.
inline constexpr std::size_t kFullWordDegree = 4;

/// The standard word set per degree n: the all-unit word, then for
/// n <= kFullWordDegree every word (1, e_1, ..., e_{n-1}, 1) with basis
/// elements e_i, and for larger n the words (1, e, ..., e, 1). Over the
/// scalar algebra only the unit words remain.
std::vector<BWord> standard_words(Algebra a, std::size_t max_degree);

/// T_pi for one partition, with the depth-indexed replacement rule.
Element t_pi(const JacobiParams& params, const BWord& w, const Partition12& pi);

/// Sum of T_pi over NC_{1,2}(n).
Element moment(const JacobiParams& params, const BWord& w, std::size_t cap = default_degree_cap());

/// Same value computed by ladder operators on the Fock space.
Element fock_moment(const JacobiParams& params, const BWord& w, std::size_t cap = default_degree_cap());

MomentTable moment_table(const JacobiParams& params, std::size_t max_degree);

/// Drops lambda_1 and alpha_1.
JacobiParams strip(const JacobiParams& params);

/// Depth-k continued fraction
///   R_k = (1 - lambda_k b - alpha_k[b] b)^{-1},
///   R_i = (1 - lambda_i b - alpha_i[b R_{i+1}] b)^{-1},
/// returning R_1. Throws SingularError naming the failing level.
Element cf_approximant(const JacobiParams& params, std::size_t k, const Element& b);

/// Formal power series of the depth-k continued fraction at s*b, as
/// coefficients of s^0..s^order.
std::vector<Element> cf_series(const JacobiParams& params, std::size_t k, const Element& b, std::size_t order);

/// (lambda_1, alpha_1) -> (eta[lambda_1], eta o alpha_1).
JacobiParams boolean_power(const JacobiParams& params, const LinMap& eta);

/// Adds lambda to every lambda_i.
JacobiParams shift_by_delta(const JacobiParams& params, const Element& lambda);

/// Prepends (0, identity).
JacobiParams phi_transform(const JacobiParams& params);

/// 1_n (x) params, acting on M_n(B).
JacobiParams amplify(const JacobiParams& params, int n);
BWord amplify(const BWord& w, int n);

// Named families.
JacobiParams point_mass(const Element& lambda);
JacobiParams semicircular(const LinMap& alpha, const Element& mean);
JacobiParams semicircular(const LinMap& alpha);
JacobiParams bernoulli(const Element& lambda1, const Element& lambda2, const LinMap& alpha);
/// t delta_a + (1-t) delta_c; requires 0 < t < 1.
JacobiParams two_point(double t, const Element& a, const Element& c);
JacobiParams free_poisson(const Element& lambda, const LinMap& alpha, const Element& mean);
/// fM(lambda, alpha; eta) = J(0, lambda, lambda, ...; eta, eta+alpha, ...).
JacobiParams meixner(const Element& lambda, const LinMap& alpha, const LinMap& eta);
JacobiParams arcsine(const LinMap& alpha);
JacobiParams free_binomial(const LinMap& eta, const LinMap& alpha);

struct MeixnerForm {
  Element lambda;
  LinMap alpha;
  LinMap eta;
};

/// Structural recognition of the canonical fM layout; nullopt otherwise.
std::optional<MeixnerForm> recognize_meixner(const JacobiParams& params, double tol = kRelTol);

/// fM(l, a; e1) + fM(l, a; e2) = fM(l, a; e1 + e2). Throws DomainError
/// unless both inputs share (lambda, alpha).
JacobiParams meixner_convolve(const JacobiParams& p1, const JacobiParams& p2);

/// Scalar free binomial moments m_n(t) by the closed formula.
Rational free_binomial_moment(int n, const Rational& t);
double free_binomial_moment(int n, double t);

/// m_{n/2}(t) b_0 a b_1 ... a b_n for even n, zero for odd n. The word lives
/// in D_d and a in M_d; requires diagonal_expectation(a) == 0 and a e a
/// diagonal for every basis element e, else DomainError.
Element free_binomial_word_moment(const Element& a, const BWord& w, double t);

struct PoissonLimit {
  JacobiParams convolved;  // mu_N^{+N}
  JacobiParams target;
  MomentTable convolved_moments;
  MomentTable target_moments;
};

/// mu_N = J(l1/N, l1/N + l; a/N, 0) convolved N times via the semigroup
/// law, against the free Poisson target J(l1, l1+l, ...; a, a, ...).
PoissonLimit poisson_limit_check(long n, const Element& lambda1, const Element& lambda, const LinMap& alpha,
                                 std::size_t max_degree = 8);

}  // namespace ncfree
