#include "ncfree/partitions.hpp"
#include "ncfree/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ncfree {

namespace {

// Sum over P_O(p, q) of prod m_{|part| - 1}.
BigInt composition_sum(int p, int q, const std::vector<BigInt>& m) {
  if (p == 0 && q == 0) return 1;
  BigInt total = 0;
  for_each_odd_composition(p, q, [&](const std::vector<int>& parts) {
    BigInt term = 1;
    for (int part : parts) term *= m[static_cast<std::size_t>(part - 1)];
    total += term;
  });
  return total;
}

}  // namespace

std::vector<BigInt> tcnc_recursion(int k, int n_max, std::vector<RecursionTrace>* trace) {
  if (k < 2) throw std::invalid_argument("the recursion needs k >= 2");
  if (n_max < 1) throw std::invalid_argument("the recursion needs n_max >= 1");
  const auto m = nu_k_moments(k - 1, 2 * n_max);

  std::vector<BigInt> moments(static_cast<std::size_t>(n_max) + 1, 0);  // M_{2n} at index n
  moments[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    RecursionTrace step;
    step.k = k;
    step.n = n;
    for (int i = n; i <= 2 * n - 1; ++i) {
      const BigInt value = 2 * binomial(2 * n - 1, i) * composition_sum(i, 2 * n - i, m);
      step.s += value;
      step.s_terms.push_back({i, value});
    }
    for (int j = 1; j <= n - 2; ++j) {
      const int r = n - j;
      BigInt inner = 0;
      for (int p = r - 1; p <= 2 * r - 1; ++p) {
        const BigInt hi = composition_sum(p + 1, 2 * r - p - 1, m);
        const BigInt lo = composition_sum(p, 2 * r - p, m);
        inner += binomial(2 * r - 1, p) * (hi - lo);
      }
      const BigInt value = moments[static_cast<std::size_t>(j)] * inner;
      step.t += value;
      step.t_terms.push_back({j, value});
    }
    step.moment = step.s - step.t;
    moments[static_cast<std::size_t>(n)] = step.moment;
    if (trace != nullptr) trace->push_back(std::move(step));
  }
  moments.erase(moments.begin());
  return moments;
}

std::vector<BigInt> tcnc2_diagonal_counts(int k, int n_max, CountMethod method) {
  if (k < 1) throw std::invalid_argument("depth bound must be at least 1");
  // With at most n_max pairs no chain is deeper than n_max, so larger bounds
  // give the same counts.
  const int effective = k > n_max ? n_max + 1 : k;
  std::vector<BigInt> out;
  switch (method) {
    case CountMethod::dynamic:
    case CountMethod::enumerate: {
      const auto family = FamilyDescriptor::tcnc2(effective, effective);
      for (int n = 1; n <= n_max; ++n) {
        out.push_back(method == CountMethod::dynamic ? count_family(family, 2 * n)
                                                     : count_by_enumeration(family, 2 * n));
      }
      return out;
    }
    case CountMethod::recursion:
      if (effective < 2) return std::vector<BigInt>(static_cast<std::size_t>(n_max), 0);
      return tcnc_recursion(effective, n_max);
    case CountMethod::cumulant: {
      const auto m = to_rational(nu_k_moments(effective, 2 * n_max));
      const auto sum = free_convolve_scalar(m, m, static_cast<std::size_t>(2 * n_max));
      for (int n = 1; n <= n_max; ++n) {
        const Rational& v = sum[static_cast<std::size_t>(2 * n)];
        if (denominator(v) != 1) throw std::logic_error("non-integral convolution moment");
        out.push_back(numerator(v));
      }
      return out;
    }
  }
  throw std::invalid_argument("unknown count method");
}

BigInt tcnc2_count(int k, int l, int n, CountMethod method) {
  if (k < 1 || l < 1) throw std::invalid_argument("depth bounds must be at least 1");
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  if (method == CountMethod::recursion && k != l) throw std::invalid_argument("the recursion needs k == l");
  if (n == 0) return 1;
  // No chain of pairs is deeper than n / 2.
  const int cap = n / 2 + 1;
  const int kk = std::min(k, cap);
  const int ll = std::min(l, cap);
  switch (method) {
    case CountMethod::dynamic:
      return count_family(FamilyDescriptor::tcnc2(kk, ll), n);
    case CountMethod::enumerate:
      return count_by_enumeration(FamilyDescriptor::tcnc2(kk, ll), n);
    case CountMethod::recursion:
      if (n % 2 == 1) return 0;
      return tcnc2_diagonal_counts(kk, n / 2, CountMethod::recursion).back();
    case CountMethod::cumulant: {
      const auto sum = free_convolve_scalar(to_rational(nu_k_moments(kk, n)), to_rational(nu_k_moments(ll, n)),
                                            static_cast<std::size_t>(n));
      const Rational& v = sum[static_cast<std::size_t>(n)];
      if (denominator(v) != 1) throw std::logic_error("non-integral convolution moment");
      return numerator(v);
    }
  }
  throw std::invalid_argument("unknown count method");
}

std::string RecursionTrace::to_string() const {
  std::ostringstream out;
  out << "M_" << 2 * n << "^(" << k << ") = S - T = " << s << " - " << t << " = " << moment << "\n";
  for (const Term& term : s_terms) out << "  S[i=" << term.index << "] = " << term.value << "\n";
  for (const Term& term : t_terms) out << "  T[j=" << term.index << "] = " << term.value << "\n";
  return out.str();
}

}  // namespace ncfree
