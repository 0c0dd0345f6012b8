#pragma once

// Joint moments of two B-free Jacobi-Szego variables X_1 (blue) and X_2 (red).

#include "ncfree/jacobi.hpp"
#include "ncfree/matrix_algebra.hpp"
#include "ncfree/partitions.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ncfree {

/// b_0 X_{e_1} b_1 ... X_{e_d} b_d; colors[i] is the color of the (i+1)-th X.
struct ColoredWord {
  Algebra algebra = Algebra::scalar();
  std::vector<Element> coeffs;
  std::vector<Color> colors;

  std::size_t degree() const { return colors.size(); }
  void validate() const;
  BWord uncolored() const { return {algebra, coeffs}; }

  /// Unit coefficients.
  static ColoredWord units(Algebra a, std::vector<Color> colors);
  static ColoredWord colored(const BWord& w, std::vector<Color> colors);
  /// Colors indexed by position 1..d (entry 0 unused) as the enumerators expect.
  std::vector<Color> position_colors() const;
};

struct JointModel {
  JacobiParams params1;  // blue
  JacobiParams params2;  // red

  void validate() const;
  const JacobiParams& params(Color c) const { return c == Color::blue ? params1 : params2; }
  /// Exchanges the marginals; pair with flipping every color of a word.
  JointModel swapped() const { return {params2, params1}; }
};

/// E_pi: blue blocks draw from params1, red blocks from params2, each at its
/// relative depth. Throws std::invalid_argument on a color mismatch.
Element e_pi(const JointModel& model, const ColoredWord& w, const ColoredPartition& pi);

/// Sum of E_pi over color-compatible two-color partitions. Depth-truncated
/// marginals restrict the sum to the matching TCNC^{k,l} family.
Element joint_moment(const JointModel& model, const ColoredWord& w, std::size_t cap = default_degree_cap());

/// Same value from the marginal moment engines alone, by the centering
/// inclusion-exclusion over maximal monochromatic intervals.
Element joint_moment_free_recursion(const JointModel& model, const ColoredWord& w,
                                    std::size_t cap = default_degree_cap());

/// Moment of X_1 + X_2 on one word: the sum over all 2^d colorings.
Element free_convolve_word(const JointModel& model, const BWord& w, std::size_t cap = default_degree_cap());

/// Moment table of X_1 + X_2 on the standard word set through `degree`.
MomentTable free_convolve_moments(const JointModel& model, std::size_t degree);

/// Words needed by verify_jacobi_consistency: degrees 1..4 over basis
/// coefficients.
std::vector<BWord> consistency_words(Algebra a);

struct LinearConstraint {
  std::string tuple;                  // the coefficients (b1, b2, b3) used
  std::string entry;                  // matrix entry the row comes from
  std::vector<Complex> coefficients;  // on the unknowns of beta_2
  Complex rhs;
};

struct ConsistencyWitness {
  std::vector<std::string> unknowns;  // names of the beta_2 coordinates
  std::vector<LinearConstraint> constraints;
  double residual = 0.0;              // least-squares residual of the full system
};

struct ConsistencyResult {
  std::optional<JacobiParams> params;        // set when consistent
  std::optional<ConsistencyWitness> witness;  // set when infeasible
  bool consistent() const { return params.has_value(); }
};

/// Decides whether symmetric moments through degree 4 come from Jacobi
/// parameters: beta_1(b) = mu[X b X], then solves
///   mu[X b1 X b2 X b3 X] - beta_1(b1) b2 beta_1(b3) = beta_1(b1 beta_2(b2) b3)
/// for beta_2 over basis triples. Throws DomainError on nonzero odd moments
/// and std::invalid_argument when a required word is missing.
ConsistencyResult verify_jacobi_consistency(const MomentTable& moments, Algebra algebra);

struct TwoByTwoReport {
  Complex lambda;
  Complex gamma;
  std::array<Complex, 2> g_mu{};
  std::array<Complex, 2> f_mu{};
  std::array<Complex, 2> f_mu_inverse{};
  std::array<Complex, 2> f_conv_closed{};
  std::array<Complex, 2> g_conv_series{};
  std::array<Complex, 2> f_conv_series{};
  std::size_t series_terms = 0;
  double residual = 0.0;            // |F closed - F series|, max entry
  double inverse_residual = 0.0;    // |F_mu(F_mu^{-1}(b)) - b|
  double linearization_residual = 0.0;  // |F_conv(2 F_mu^{-1}(b) - b) - b|
};

/// The M_2 model a = e12 + e21 over D_2 with b = diag(lambda, gamma):
/// closed-form transforms against the moment series of mu + mu. Requires
/// nonzero lambda, gamma and |1/(lambda gamma)| < 1/4, else DomainError.
TwoByTwoReport two_by_two_model_check(Complex lambda, Complex gamma);

}  // namespace ncfree
