#pragma once

// Finite-dimensional base algebras: the full matrix algebra M_d and its
// diagonal subalgebra D_d over complex scalars, elements, and linear
// self-maps in Kraus or dense (column-major vectorized) form.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ncfree {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

enum class AlgebraKind { full, diagonal };

struct Algebra {
  AlgebraKind kind = AlgebraKind::full;
  int dim = 1;

  static Algebra full(int d);
  static Algebra diagonal(int d);
  static Algebra scalar() { return full(1); }

  std::string to_string() const;
  friend bool operator==(const Algebra&, const Algebra&) = default;
};

/// Shared tolerance rule: |a-b| <= abs + rel*max(|a|,|b|), entrywise max norm.
bool approx_equal(const Matrix& a, const Matrix& b, double rel = kRelTol, double abs = kAbsTol);

class Element {
 public:
  Element() : Element(Algebra::scalar()) {}
  explicit Element(Algebra algebra);
  /// Throws AlgebraMismatch on a shape mismatch or, for the diagonal kind,
  /// nonzero off-diagonal entries.
  Element(Algebra algebra, Matrix entries);

  static Element zero(Algebra a) { return Element(a); }
  static Element unit(Algebra a);
  static Element scalar(Algebra a, Complex s);
  static Element diag(Algebra a, const std::vector<Complex>& values);
  /// Matrix unit e_{ij}, 0-based indices.
  static Element matrix_unit(Algebra a, int i, int j);

  const Algebra& algebra() const noexcept { return algebra_; }
  int dim() const noexcept { return algebra_.dim; }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  Element adjoint() const;
  /// Throws SingularError when the condition estimate exceeds 1e12.
  Element inverse() const;
  bool is_self_adjoint(double tol = kRelTol) const;
  double norm() const;  // operator norm
  bool is_zero(double tol = kAbsTol) const { return m_.cwiseAbs().maxCoeff() <= tol; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator-(Element a) { return a *= Complex(-1.0); }

  friend bool approx_equal(const Element& a, const Element& b, double rel = kRelTol, double abs = kAbsTol) {
    return a.dim() == b.dim() && approx_equal(a.m_, b.m_, rel, abs);
  }

 private:
  Algebra algebra_;
  Matrix m_;
};

/// Basis of the algebra: e_{ii} for diagonal kind, all e_{ij} (column-major
/// order) for full kind.
std::vector<Element> basis(Algebra a);

/// Conditional expectation M_d -> D_d zeroing off-diagonal entries.
Element diagonal_expectation(const Element& x);

class LinMap {
 public:
  LinMap() : LinMap(zero(Algebra::scalar())) {}

  /// b -> sum_s A_s b A_s^*.
  static LinMap kraus(Algebra a, std::vector<Matrix> ops);
  /// d^2 x d^2 matrix acting on column-major vec(b).
  static LinMap dense(Algebra a, Matrix m);
  static LinMap identity(Algebra a);
  static LinMap zero(Algebra a);
  /// b -> s*b.
  static LinMap scalar(Algebra a, Complex s);
  /// The flip e_{11} <-> e_{22} style permutation of diagonal entries
  /// b -> J b J with J the exchange matrix.
  static LinMap flip(Algebra a);

  const Algebra& algebra() const noexcept { return algebra_; }
  const Matrix& dense_matrix() const noexcept { return dense_; }
  const std::optional<std::vector<Matrix>>& kraus_ops() const noexcept { return kraus_; }
  bool is_kraus() const noexcept { return kraus_.has_value(); }

  Element operator()(const Element& b) const { return apply(b); }
  Element apply(const Element& b) const;

  /// Kraus maps are CP by construction; otherwise the Choi matrix is tested
  /// (diagonal kind: entrywise nonnegativity of the induced d x d matrix).
  bool is_cp() const;
  bool is_zero(double tol = kAbsTol) const { return dense_.cwiseAbs().maxCoeff() <= tol; }


 private:
  LinMap(Algebra a, Matrix dense, std::optional<std::vector<Matrix>> kraus);

  Algebra algebra_;
  Matrix dense_;
  std::optional<std::vector<Matrix>> kraus_;
};

/// m1 o m2 (apply m2 first).
/// Maps on D_d are compared by their action on D_d only.
bool approx_equal(const LinMap& a, const LinMap& b, double rel = kRelTol, double abs = kAbsTol);

LinMap compose(const LinMap& m1, const LinMap& m2);
LinMap operator+(const LinMap& a, const LinMap& b);
LinMap operator-(const LinMap& a, const LinMap& b);
LinMap operator*(Complex s, const LinMap& m);

/// I_n (x) alpha acting blockwise on M_n(B); the result lives in the full
/// algebra of dimension n*d.
LinMap amplify(const LinMap& m, int n);
/// 1_n (x) b.
Element amplify(const Element& b, int n);
/// Embeds an n x n grid of elements as one element of M_{n d}.
Element block_element(const std::vector<std::vector<Element>>& blocks);

/// Positive semidefiniteness of the assembled block matrix; non-Hermitian
/// grids are rejected. Throws std::invalid_argument on a ragged grid.
bool gram_psd_check(const std::vector<std::vector<Element>>& grid, double tol = kPsdTol);

}  // namespace ncfree
