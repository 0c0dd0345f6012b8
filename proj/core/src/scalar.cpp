#include "ncfree/scalar.hpp"

#include "ncfree/errors.hpp"
#include "ncfree/partitions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncfree {

Cplx chebyshev_u(int k, Cplx z) {
  if (k < 0) throw std::invalid_argument("Chebyshev index must be nonnegative");
  Cplx prev = 1.0;
  if (k == 0) return prev;
  Cplx cur = z;
  for (int i = 1; i < k; ++i) {
    const Cplx next = z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<BigInt> chebyshev_u_coeffs(int k) {
  if (k < 0) throw std::invalid_argument("Chebyshev index must be nonnegative");
  std::vector<BigInt> prev{1};
  if (k == 0) return prev;
  std::vector<BigInt> cur{0, 1};
  for (int i = 1; i < k; ++i) {
    std::vector<BigInt> next(cur.size() + 1, 0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void AtomicMeasure::validate_and_clamp() {
  if (atoms.size() != weights.size() || atoms.empty()) throw DomainError("atoms and weights must pair up");
  double total = 0.0;
  for (double& w : weights) {
    if (w < -1e-12) throw DomainError("negative atomic weight");
    if (w < 0.0) w = 0.0;
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("atomic weights do not sum to 1");
}

double AtomicMeasure::moment(int n) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) sum += weights[j] * std::pow(atoms[j], n);
  return sum;
}

Cplx AtomicMeasure::cauchy(Cplx z) const {
  Cplx sum = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (std::abs(z - atoms[j]) < 1e-6) throw DomainError("sample point too close to the spectrum");
    sum += weights[j] / (z - atoms[j]);
  }
  return sum;
}

AtomicMeasure nu_k(int k) {
  if (k < 1) throw std::invalid_argument("nu_k needs k >= 1");
  AtomicMeasure m;
  if (k == 1) {
    m.atoms = {0.0};
    m.weights = {1.0};
    return m;
  }
  const double step = std::numbers::pi / (k + 1);
  for (int j = 1; j <= k; ++j) {
    m.atoms.push_back(2.0 * std::cos(j * step));
    m.weights.push_back((1.0 - std::cos(2.0 * j * step)) / (k + 1));
  }
  m.validate_and_clamp();
  return m;
}

BigInt tridiagonal_moment(int k, int n) {
  if (k < 1 || n < 0) throw std::invalid_argument("tridiagonal moment needs k >= 1, n >= 0");
  // v = X_k^n e_1, tracked as a vector
  std::vector<BigInt> v(static_cast<std::size_t>(k), 0);
  v[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<BigInt> next(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) next[i] += v[i - 1];
      if (i + 1 < v.size()) next[i] += v[i + 1];
    }
    v = std::move(next);
  }
  return v[0];
}

std::vector<BigInt> nu_k_moments(int k, int max_degree) {
  std::vector<BigInt> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(tridiagonal_moment(k, n));
  return out;
}

std::vector<BigInt> chebyshev_ratio_moments(int k, int max_degree) {
  if (k < 1) throw std::invalid_argument("Chebyshev ratio needs k >= 1");
  // U_j(z) = z^j P_j(w), w = 1/z, with P_j(0) = 1; G = w P_{k-1}(w) / P_k(w)
  auto reversed = [](int j) {
    const auto c = chebyshev_u_coeffs(j);
    return std::vector<BigInt>(c.rbegin(), c.rend());
  };
  const auto num = reversed(k - 1);
  const auto den = reversed(k);
  const auto terms = static_cast<std::size_t>(max_degree) + 1;
  // q = P_{k-1} / P_k as a power series in w; den[0] == 1
  std::vector<BigInt> q(terms, 0);
  for (std::size_t n = 0; n < terms; ++n) {
    BigInt acc = n < num.size() ? num[n] : BigInt(0);
    for (std::size_t j = 1; j <= n && j < den.size(); ++j) acc -= den[j] * q[n - j];
    q[n] = acc;
  }
  return q;  // coefficient of w^{n+1} in G is m_n
}

std::vector<Rational> to_rational(const std::vector<BigInt>& values) {
  return std::vector<Rational>(values.begin(), values.end());
}

namespace {

// Coefficients 0..n of the s-th powers of a series, for s = 0..n.
std::vector<std::vector<Rational>> powers(const std::vector<Rational>& m, std::size_t n) {
  std::vector<std::vector<Rational>> pw(n + 1, std::vector<Rational>(n + 1, 0));
  pw[0][0] = 1;
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (pw[s - 1][i] == 0) continue;
      for (std::size_t j = 0; i + j <= n && j < m.size(); ++j) pw[s][i + j] += pw[s - 1][i] * m[j];
    }
  }
  return pw;
}

std::vector<Rational> series_inverse(const std::vector<Rational>& a) {
  if (a.empty() || a[0] == 0) throw SingularError("series with zero constant term is not invertible");
  std::vector<Rational> inv(a.size(), 0);
  inv[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= n; ++j) acc += a[j] * inv[n - j];
    inv[n] = -acc / a[0];
  }
  return inv;
}

}  // namespace

std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& m) {
  if (m.empty() || m[0] != 1) throw DomainError("moment sequence must start with m_0 = 1");
  const std::size_t n_max = m.size() - 1;
  const auto pw = powers(m, n_max);
  std::vector<Rational> kappa(m.size(), 0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational acc = m[n];
    for (std::size_t s = 1; s < n; ++s) acc -= kappa[s] * pw[s][n - s];
    kappa[n] = acc;
  }
  return kappa;
}

std::vector<Rational> cumulants_to_moments(const std::vector<Rational>& kappa) {
  const std::size_t n_max = kappa.empty() ? 0 : kappa.size() - 1;
  std::vector<Rational> m(n_max + 1, 0);
  m[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    // [z^{n-s}] M^s only involves m_0..m_{n-1}
    const auto pw = powers(std::vector<Rational>(m.begin(), m.begin() + static_cast<long>(n)), n);
    Rational acc = 0;
    for (std::size_t s = 1; s <= n; ++s) acc += kappa[s] * pw[s][n - s];
    m[n] = acc;
  }
  return m;
}

std::vector<Rational> free_convolve_scalar(const std::vector<Rational>& m1, const std::vector<Rational>& m2,
                                           std::size_t max_degree) {
  if (m1.size() <= max_degree || m2.size() <= max_degree) {
    throw std::invalid_argument("moment sequences are shorter than the requested degree");
  }
  const auto k1 = moments_to_cumulants(std::vector<Rational>(m1.begin(), m1.begin() + static_cast<long>(max_degree) + 1));
  const auto k2 = moments_to_cumulants(std::vector<Rational>(m2.begin(), m2.begin() + static_cast<long>(max_degree) + 1));
  std::vector<Rational> sum(max_degree + 1, 0);
  for (std::size_t i = 1; i <= max_degree; ++i) sum[i] = k1[i] + k2[i];
  return cumulants_to_moments(sum);
}

std::vector<Rational> boolean_cumulants(const std::vector<Rational>& m) {
  if (m.empty() || m[0] != 1) throw DomainError("moment sequence must start with m_0 = 1");
  auto b = series_inverse(m);
  for (auto& c : b) c = -c;
  b[0] += 1;
  return b;
}

std::vector<Rational> boolean_cumulants_to_moments(const std::vector<Rational>& b) {
  std::vector<Rational> one_minus(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) one_minus[i] = -b[i];
  one_minus[0] += 1;
  return series_inverse(one_minus);
}

double g_recursion_check(int n, Cplx z) {
  if (n < 2) throw std::invalid_argument("recursion check needs n > 1");
  const Cplx gn = nu_k(n).cauchy(z);
  const Cplx gm = nu_k(n - 1).cauchy(z);
  return std::abs(gn - 1.0 / (z - gm));
}

JacobiCoefficients stieltjes(const std::vector<Rational>& m) {
  if (m.empty() || m[0] == 0) throw DomainError("moment functional needs m_0 != 0");
  auto functional = [&](const std::vector<Rational>& p) {
    Rational acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * m[i];
    return acc;
  };
  auto product = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    std::vector<Rational> r(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    }
    return r;
  };
  JacobiCoefficients jc;
  std::vector<Rational> prev;  // P_{-1} = 0
  std::vector<Rational> cur{1};
  Rational prev_norm = 0;
  Rational norm = m[0];
  for (;;) {
    auto square = product(cur, cur);
    std::vector<Rational> x_square(square.size() + 1, 0);
    for (std::size_t i = 0; i < square.size(); ++i) x_square[i + 1] = square[i];
    if (x_square.size() > m.size()) break;
    const Rational a = functional(x_square) / norm;
    jc.a.push_back(a);
    // P_{j+1} = (x - a_j) P_j - b_j P_{j-1}
    std::vector<Rational> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] -= a * cur[i];
    }
    if (!prev.empty()) {
      const Rational b = norm / prev_norm;
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= b * prev[i];
    }
    const auto next_square = product(next, next);
    if (next_square.size() > m.size()) break;
    const Rational next_norm = functional(next_square);
    if (next_norm == 0) break;
    jc.b.push_back(next_norm / norm);
    prev = std::move(cur);
    cur = std::move(next);
    prev_norm = norm;
    norm = next_norm;
  }
  return jc;
}

Cplx j_fraction(const JacobiCoefficients& jc, Cplx z) {
  // r_j = 1 / (z - a_j - b_{j+1} r_{j+1}), r_depth = 0
  Cplx r = 0.0;
  for (std::size_t j = jc.a.size(); j-- > 0;) {
    const Cplx coupling = j < jc.b.size() ? to_double(jc.b[j]) * r : Cplx(0.0);
    r = 1.0 / (z - to_double(jc.a[j]) - coupling);
  }
  return r;
}

Cplx mu_nn_cauchy(int n, Cplx z, int order) {
  if (n < 1) throw std::invalid_argument("mu_{n,n} needs n >= 1");
  if (n == 2) {
    // arcsine law on [-2, 2]; the root is the branch asymptotic to z
    Cplx root = std::sqrt(z * z - 4.0);
    if ((root * std::conj(z)).real() < 0.0) root = -root;
    return 1.0 / root;
  }
  if (order < 2) throw std::invalid_argument("J-fraction order must be at least 2");
  const auto nu = to_rational(nu_k_moments(n, order + 1));
  const auto m = free_convolve_scalar(nu, nu, static_cast<std::size_t>(order + 1));
  return j_fraction(stieltjes(m), z);
}

double subordination_check(int n, Cplx z, int order) {
  if (n < 2) throw std::invalid_argument("subordination check needs n > 1");
  const Cplx g = nu_k(n - 1).cauchy(z);
  const Cplx f = 1.0 / mu_nn_cauchy(n, z + g, order);
  return std::abs(f - (z - g));
}

Rational free_binomial_pairing_sum(int n, const Rational& t) {
  if (n < 0) throw std::invalid_argument("moment index must be nonnegative");
  Rational total = 0;
  for_each_nc12(2 * n, {true, kUnbounded}, [&](const Partition12& pi) {
    const auto depths = block_depths(pi).absolute;
    Rational term = 1;
    for (int d : depths) term *= d == 1 ? t : t - 1;
    total += term;
  });
  return total;
}

std::vector<Rational> free_binomial_series(const Rational& t, int max_degree) {
  if (t < 1) throw DomainError("free binomial parameter must be at least 1");
  if (max_degree < 0 || max_degree > 40) throw std::invalid_argument("series degree must lie in 0..40");
  const auto terms = static_cast<std::size_t>(max_degree) + 1;
  // s = sqrt(1 + u), u = -4(t-1) z^2, by s_n = (u_n - sum_{0<j<n} s_j s_{n-j}) / 2
  std::vector<Rational> u(terms, 0);
  if (terms > 2) u[2] = -4 * (t - 1);
  std::vector<Rational> root(terms, 0);
  root[0] = 1;
  for (std::size_t n = 1; n < terms; ++n) {
    Rational acc = u[n];
    for (std::size_t j = 1; j < n; ++j) acc -= root[j] * root[n - j];
    root[n] = acc / 2;
  }
  std::vector<Rational> numerator(terms, 0);
  for (std::size_t n = 0; n < terms; ++n) numerator[n] = -t * root[n];
  numerator[0] += t - 2;
  std::vector<Rational> denominator(terms, 0);
  denominator[0] = -2;
  if (terms > 2) denominator[2] = 2 * t * t;
  const auto inv = series_inverse(denominator);
  std::vector<Rational> out(terms, 0);
  for (std::size_t n = 0; n < terms; ++n) {
    for (std::size_t j = 0; j <= n; ++j) out[n] += numerator[j] * inv[n - j];
  }
  return out;
}

}  // namespace ncfree
