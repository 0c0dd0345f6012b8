#include "ncfree/matrix_algebra.hpp"

#include "ncfree/errors.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncfree {

namespace {

Matrix vec_to_matrix(const Eigen::VectorXcd& v, int d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Eigen::VectorXcd matrix_to_vec(const Matrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

bool is_diagonal(const Matrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

Algebra combined(const Algebra& a, const Algebra& b) {
  if (a.dim != b.dim) {
    throw AlgebraMismatch("elements of " + a.to_string() + " and " + b.to_string() + " do not combine");
  }
  return a.kind == AlgebraKind::diagonal && b.kind == AlgebraKind::diagonal ? a : Algebra::full(a.dim);
}

void require_same(const Algebra& a, const Algebra& b, const char* what) {
  if (!(a == b)) throw AlgebraMismatch(std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
}

}  // namespace

Algebra Algebra::full(int d) {
  if (d < 1) throw std::invalid_argument("algebra dimension must be at least 1");
  return {AlgebraKind::full, d};
}

Algebra Algebra::diagonal(int d) {
  if (d < 1) throw std::invalid_argument("algebra dimension must be at least 1");
  return {AlgebraKind::diagonal, d};
}

std::string Algebra::to_string() const {
  return (kind == AlgebraKind::full ? "M_" : "D_") + std::to_string(dim);
}

bool approx_equal(const Matrix& a, const Matrix& b, double rel, double abs) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() <= abs + rel * scale;
}

Element::Element(Algebra algebra) : algebra_(algebra), m_(Matrix::Zero(algebra.dim, algebra.dim)) {}

Element::Element(Algebra algebra, Matrix entries) : algebra_(algebra), m_(std::move(entries)) {
  if (m_.rows() != algebra_.dim || m_.cols() != algebra_.dim) {
    throw AlgebraMismatch("entries are " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                          ", algebra is " + algebra_.to_string());
  }
  if (algebra_.kind == AlgebraKind::diagonal) {
    if (!is_diagonal(m_, kAbsTol)) throw AlgebraMismatch("diagonal algebra element has off-diagonal entries");
    m_ = Matrix(m_.diagonal().asDiagonal());
  }
}

Element Element::unit(Algebra a) { return Element(a, Matrix::Identity(a.dim, a.dim)); }

Element Element::scalar(Algebra a, Complex s) {
  return Element(a, Matrix(Matrix::Identity(a.dim, a.dim) * s));
}

Element Element::diag(Algebra a, const std::vector<Complex>& values) {
  if (static_cast<int>(values.size()) != a.dim) throw AlgebraMismatch("diagonal length does not match dimension");
  Matrix m = Matrix::Zero(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return Element(a, std::move(m));
}

Element Element::matrix_unit(Algebra a, int i, int j) {
  if (i < 0 || j < 0 || i >= a.dim || j >= a.dim) throw std::out_of_range("matrix unit index");
  if (a.kind == AlgebraKind::diagonal && i != j) throw AlgebraMismatch("off-diagonal unit in diagonal algebra");
  Matrix m = Matrix::Zero(a.dim, a.dim);
  m(i, j) = 1.0;
  return Element(a, std::move(m));
}

Element Element::adjoint() const { return Element(algebra_, m_.adjoint()); }

Element Element::inverse() const {
  Eigen::JacobiSVD<Matrix> svd(m_);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > 1e12) throw SingularError("element is not invertible");
  return Element(algebra_, m_.inverse());
}

bool Element::is_self_adjoint(double tol) const { return approx_equal(m_, m_.adjoint(), tol, kAbsTol); }

double Element::norm() const {
  Eigen::JacobiSVD<Matrix> svd(m_);
  return svd.singularValues()(0);
}

Element& Element::operator+=(const Element& o) {
  algebra_ = combined(algebra_, o.algebra_);
  m_ += o.m_;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  algebra_ = combined(algebra_, o.algebra_);
  m_ -= o.m_;
  return *this;
}

Element& Element::operator*=(const Element& o) {
  algebra_ = combined(algebra_, o.algebra_);
  m_ = m_ * o.m_;
  return *this;
}

Element& Element::operator*=(Complex s) {
  m_ *= s;
  return *this;
}


std::vector<Element> basis(Algebra a) {
  std::vector<Element> out;
  if (a.kind == AlgebraKind::diagonal) {
    for (int i = 0; i < a.dim; ++i) out.push_back(Element::matrix_unit(a, i, i));
    return out;
  }
  for (int j = 0; j < a.dim; ++j) {
    for (int i = 0; i < a.dim; ++i) out.push_back(Element::matrix_unit(a, i, j));
  }
  return out;
}

Element diagonal_expectation(const Element& x) {
  return Element(Algebra::diagonal(x.dim()), Matrix(x.matrix().diagonal().asDiagonal()));
}

LinMap::LinMap(Algebra a, Matrix dense, std::optional<std::vector<Matrix>> kraus)
    : algebra_(a), dense_(std::move(dense)), kraus_(std::move(kraus)) {
  const int d2 = a.dim * a.dim;
  if (dense_.rows() != d2 || dense_.cols() != d2) {
    throw AlgebraMismatch("dense map must be " + std::to_string(d2) + "x" + std::to_string(d2) + " for " +
                          a.to_string());
  }
  if (a.kind == AlgebraKind::diagonal) {
    for (int j = 0; j < a.dim; ++j) {
      Matrix e = Matrix::Zero(a.dim, a.dim);
      e(j, j) = 1.0;
      const Matrix image = vec_to_matrix(dense_ * matrix_to_vec(e), a.dim);
      if (!is_diagonal(image, 1e-10)) throw AlgebraMismatch("map does not preserve the diagonal subalgebra");
    }
  }
}

LinMap LinMap::kraus(Algebra a, std::vector<Matrix> ops) {
  const int d = a.dim;
  Matrix dense = Matrix::Zero(d * d, d * d);
  for (const Matrix& op : ops) {
    if (op.rows() != d || op.cols() != d) throw AlgebraMismatch("Kraus operator shape does not match algebra");
    // vec(A b A^*) = (conj(A) (x) A) vec(b)
    dense += Eigen::kroneckerProduct(op.conjugate(), op);
  }
  return LinMap(a, std::move(dense), std::move(ops));
}

LinMap LinMap::dense(Algebra a, Matrix m) { return LinMap(a, std::move(m), std::nullopt); }

LinMap LinMap::identity(Algebra a) { return kraus(a, {Matrix::Identity(a.dim, a.dim)}); }

LinMap LinMap::zero(Algebra a) { return kraus(a, {}); }

LinMap LinMap::scalar(Algebra a, Complex s) {
  const int d2 = a.dim * a.dim;
  return dense(a, Matrix(Matrix::Identity(d2, d2) * s));
}

LinMap LinMap::flip(Algebra a) {
  Matrix j = Matrix::Zero(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) j(i, a.dim - 1 - i) = 1.0;
  return kraus(a, {j});
}

Element LinMap::apply(const Element& b) const {
  if (b.dim() != algebra_.dim ||
      (algebra_.kind == AlgebraKind::diagonal && b.algebra().kind != AlgebraKind::diagonal)) {
    throw AlgebraMismatch("map on " + algebra_.to_string() + " applied to element of " + b.algebra().to_string());
  }
  Matrix out;
  if (kraus_) {
    out = Matrix::Zero(algebra_.dim, algebra_.dim);
    for (const Matrix& op : *kraus_) out += op * b.matrix() * op.adjoint();
  } else {
    out = vec_to_matrix(dense_ * matrix_to_vec(b.matrix()), algebra_.dim);
  }
  if (algebra_.kind == AlgebraKind::diagonal) out = Matrix(out.diagonal().asDiagonal());
  return Element(algebra_, std::move(out));
}

bool LinMap::is_cp() const {
  if (kraus_) return true;
  const int d = algebra_.dim;
  if (algebra_.kind == AlgebraKind::diagonal) {
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(j, j) = 1.0;
      const Matrix image = vec_to_matrix(dense_ * matrix_to_vec(e), d);
      for (int i = 0; i < d; ++i) {
        if (std::abs(image(i, i).imag()) > kPsdTol || image(i, i).real() < -kPsdTol) return false;
      }
    }
    return true;
  }
  // Choi matrix sum_{ij} e_ij (x) Phi(e_ij)
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      choi.block(i * d, j * d, d, d) = vec_to_matrix(dense_ * matrix_to_vec(e), d);
    }
  }
  if (!approx_equal(choi, choi.adjoint(), kRelTol, kPsdTol)) return false;
  const Matrix herm = (choi + choi.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -kPsdTol;
}


bool approx_equal(const LinMap& a, const LinMap& b, double rel, double abs) {
  if (a.algebra().dim != b.algebra().dim || a.algebra().kind != b.algebra().kind) return false;
  if (a.algebra().kind == AlgebraKind::full) return approx_equal(a.dense_matrix(), b.dense_matrix(), rel, abs);
  const int d = a.algebra().dim;
  Matrix da(d, d);
  Matrix db(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      da(i, j) = a.dense_matrix()(i * (d + 1), j * (d + 1));
      db(i, j) = b.dense_matrix()(i * (d + 1), j * (d + 1));
    }
  }
  return approx_equal(da, db, rel, abs);
}

LinMap compose(const LinMap& m1, const LinMap& m2) {
  require_same(m1.algebra(), m2.algebra(), "compose");
  if (m1.is_kraus() && m2.is_kraus()) {
    std::vector<Matrix> ops;
    for (const Matrix& a : *m1.kraus_ops()) {
      for (const Matrix& b : *m2.kraus_ops()) ops.push_back(a * b);
    }
    return LinMap::kraus(m1.algebra(), std::move(ops));
  }
  return LinMap::dense(m1.algebra(), m1.dense_matrix() * m2.dense_matrix());
}

LinMap operator+(const LinMap& a, const LinMap& b) {
  require_same(a.algebra(), b.algebra(), "add");
  if (a.is_kraus() && b.is_kraus()) {
    std::vector<Matrix> ops = *a.kraus_ops();
    ops.insert(ops.end(), b.kraus_ops()->begin(), b.kraus_ops()->end());
    return LinMap::kraus(a.algebra(), std::move(ops));
  }
  return LinMap::dense(a.algebra(), a.dense_matrix() + b.dense_matrix());
}

LinMap operator-(const LinMap& a, const LinMap& b) {
  require_same(a.algebra(), b.algebra(), "subtract");
  return LinMap::dense(a.algebra(), a.dense_matrix() - b.dense_matrix());
}

LinMap operator*(Complex s, const LinMap& m) {
  if (m.is_kraus() && std::abs(s.imag()) == 0.0 && s.real() >= 0.0) {
    std::vector<Matrix> ops;
    for (const Matrix& op : *m.kraus_ops()) ops.push_back(op * std::sqrt(s.real()));
    return LinMap::kraus(m.algebra(), std::move(ops));
  }
  return LinMap::dense(m.algebra(), m.dense_matrix() * s);
}

LinMap amplify(const LinMap& m, int n) {
  if (n < 1) throw std::invalid_argument("amplification size must be at least 1");
  const int d = m.algebra().dim;
  const Algebra big = Algebra::full(n * d);
  if (m.is_kraus()) {
    std::vector<Matrix> ops;
    for (const Matrix& op : *m.kraus_ops()) {
      ops.push_back(Eigen::kroneckerProduct(Matrix::Identity(n, n), op).eval());
    }
    return LinMap::kraus(big, std::move(ops));
  }
  const int nd = n * d;
  Matrix dense = Matrix::Zero(nd * nd, nd * nd);
  for (int col = 0; col < nd; ++col) {
    for (int row = 0; row < nd; ++row) {
      // e_{row,col} sits in block (row/d, col/d) at local (row%d, col%d)
      Matrix local = Matrix::Zero(d, d);
      local(row % d, col % d) = 1.0;
      const Matrix image = vec_to_matrix(m.dense_matrix() * matrix_to_vec(local), d);
      Matrix full = Matrix::Zero(nd, nd);
      full.block((row / d) * d, (col / d) * d, d, d) = image;
      dense.col(col * nd + row) = matrix_to_vec(full);
    }
  }
  return LinMap::dense(big, std::move(dense));
}

Element amplify(const Element& b, int n) {
  if (n < 1) throw std::invalid_argument("amplification size must be at least 1");
  return Element(Algebra::full(n * b.dim()), Eigen::kroneckerProduct(Matrix::Identity(n, n), b.matrix()).eval());
}

Element block_element(const std::vector<std::vector<Element>>& blocks) {
  const auto n = static_cast<int>(blocks.size());
  if (n == 0) throw std::invalid_argument("empty block grid");
  const int d = blocks[0][0].dim();
  Matrix m(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(blocks[static_cast<std::size_t>(i)].size()) != n) {
      throw std::invalid_argument("block grid must be square");
    }
    for (int j = 0; j < n; ++j) {
      const Element& e = blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (e.dim() != d) throw AlgebraMismatch("block grid mixes dimensions");
      m.block(i * d, j * d, d, d) = e.matrix();
    }
  }
  return Element(Algebra::full(n * d), std::move(m));
}

bool gram_psd_check(const std::vector<std::vector<Element>>& grid, double tol) {
  const Matrix g = block_element(grid).matrix();
  if (!approx_equal(g, g.adjoint(), kRelTol, tol)) return false;
  const Matrix herm = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

}  // namespace ncfree
