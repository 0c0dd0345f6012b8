#pragma once

// Random parameter sets for property tests.

#include <ncfree/jacobi.hpp>
#include <ncfree/joint.hpp>

#include <random>

namespace gen {

using namespace ncfree;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(std::mt19937_64& rng, int d, double scale) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
  }
  return m;
}

/// A random element; self-adjoint when `hermitian` is set.
inline Element random_element(std::mt19937_64& rng, Algebra a, double scale = 1.0, bool hermitian = true) {
  if (a.kind == AlgebraKind::diagonal) {
    std::vector<Complex> v;
    for (int i = 0; i < a.dim; ++i) {
      v.emplace_back(uniform(rng, -scale, scale), hermitian ? 0.0 : uniform(rng, -scale, scale));
    }
    return Element::diag(a, v);
  }
  Matrix m = random_matrix(rng, a.dim, scale);
  if (hermitian) m = (0.5 * (m + m.adjoint())).eval();
  return Element(a, m);
}

/// A random completely positive map: Kraus form on M_d, nonnegative
/// coefficient matrix on D_d.
inline LinMap random_cp_map(std::mt19937_64& rng, Algebra a, double scale = 1.0) {
  if (a.kind == AlgebraKind::diagonal) {
    Matrix dense = Matrix::Zero(a.dim * a.dim, a.dim * a.dim);
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j) {
        // Column-major vectorisation: diagonal entry k sits at index k * (d + 1).
        dense(i * (a.dim + 1), j * (a.dim + 1)) = uniform(rng, 0.0, scale);
      }
    }
    return LinMap::dense(a, dense);
  }
  std::vector<Matrix> ops;
  for (int r = 0; r < 2; ++r) ops.push_back(random_matrix(rng, a.dim, std::sqrt(scale)));
  return LinMap::kraus(a, std::move(ops));
}

/// A general (not necessarily CP) map with dense coefficients.
inline LinMap random_map(std::mt19937_64& rng, Algebra a, double scale = 1.0) {
  if (a.kind == AlgebraKind::diagonal) return random_cp_map(rng, a, scale);
  const int n = a.dim * a.dim;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
  }
  return LinMap::dense(a, m);
}

/// Positive parameters with a head of `head` levels followed by a tail.
inline JacobiParams random_params(std::mt19937_64& rng, Algebra a, std::size_t head, double scale = 1.0) {
  std::vector<Element> lambdas;
  std::vector<LinMap> alphas;
  for (std::size_t i = 0; i < head; ++i) {
    lambdas.push_back(random_element(rng, a, scale));
    alphas.push_back(random_cp_map(rng, a, scale));
  }
  JacobiParams p = JacobiParams::from_sequences(a, std::move(lambdas), std::move(alphas), random_element(rng, a, scale),
                                                random_cp_map(rng, a, scale));
  p.positive = true;
  return p;
}

inline BWord random_word(std::mt19937_64& rng, Algebra a, std::size_t degree, double scale = 1.0) {
  BWord w{a, {}};
  for (std::size_t i = 0; i <= degree; ++i) w.coeffs.push_back(random_element(rng, a, scale, false));
  return w;
}

}  // namespace gen
