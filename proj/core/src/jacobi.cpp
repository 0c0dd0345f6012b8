#include "ncfree/jacobi.hpp"

#include "block_eval.hpp"
#include "ncfree/errors.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ncfree {

std::size_t default_degree_cap() {
  if (const char* env = std::getenv("NCFREE_DEGREE_CAP")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
  }
  return 16;
}

const Element& JacobiParams::lambda(std::size_t i) const {
  if (i == 0) throw std::out_of_range("Jacobi parameters are indexed from 1");
  return i <= head_lambda.size() ? head_lambda[i - 1] : tail_lambda;
}

const LinMap& JacobiParams::alpha(std::size_t i) const {
  if (i == 0) throw std::out_of_range("Jacobi parameters are indexed from 1");
  return i <= head_alpha.size() ? head_alpha[i - 1] : tail_alpha;
}

void JacobiParams::validate() const {
  auto check_element = [&](const Element& e, const std::string& where) {
    if (e.dim() != algebra.dim || (algebra.kind == AlgebraKind::diagonal && e.algebra().kind != algebra.kind)) {
      throw AlgebraMismatch(where + " is in " + e.algebra().to_string() + ", expected " + algebra.to_string());
    }
    if (positive && !e.is_self_adjoint()) throw DomainError(where + " is not self-adjoint");
  };
  auto check_map = [&](const LinMap& m, const std::string& where) {
    if (!(m.algebra() == algebra)) {
      throw AlgebraMismatch(where + " acts on " + m.algebra().to_string() + ", expected " + algebra.to_string());
    }
    if (positive && !m.is_cp()) throw DomainError(where + " is not completely positive");
  };
  for (std::size_t i = 0; i < head_lambda.size(); ++i) check_element(head_lambda[i], "lambda_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < head_alpha.size(); ++i) check_map(head_alpha[i], "alpha_" + std::to_string(i + 1));
  check_element(tail_lambda, "tail lambda");
  check_map(tail_alpha, "tail alpha");
}

JacobiParams JacobiParams::from_sequences(Algebra a, std::vector<Element> lambdas, std::vector<LinMap> alphas,
                                          Element tail_lambda, LinMap tail_alpha) {
  JacobiParams p;
  p.algebra = a;
  p.head_lambda = std::move(lambdas);
  p.head_alpha = std::move(alphas);
  p.tail_lambda = std::move(tail_lambda);
  p.tail_alpha = std::move(tail_alpha);
  p.validate();
  return p;
}

JacobiParams JacobiParams::constant(Element lambda, LinMap alpha) {
  const Algebra a = alpha.algebra();
  return from_sequences(a, {}, {}, std::move(lambda), std::move(alpha));
}

bool approx_equal(const JacobiParams& a, const JacobiParams& b, std::size_t levels, double rel, double abs) {
  for (std::size_t i = 1; i <= levels; ++i) {
    if (!approx_equal(a.lambda(i), b.lambda(i), rel, abs)) return false;
    if (!approx_equal(a.alpha(i), b.alpha(i), rel, abs)) return false;
  }
  return true;
}

void BWord::validate() const {
  if (coeffs.empty()) throw std::invalid_argument("a word needs at least one coefficient");
  for (const Element& c : coeffs) {
    if (c.dim() != algebra.dim) throw AlgebraMismatch("word coefficient outside " + algebra.to_string());
  }
}

BWord BWord::units(Algebra a, std::size_t degree) {
  return {a, std::vector<Element>(degree + 1, Element::unit(a))};
}

BWord BWord::power(const Element& b, std::size_t degree) {
  BWord w{b.algebra(), std::vector<Element>(degree + 1, b)};
  w.coeffs[0] = Element::unit(b.algebra());
  return w;
}

BWord BWord::adjoint() const {
  BWord w{algebra, {}};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) w.coeffs.push_back(it->adjoint());
  return w;
}

BWord operator*(const BWord& u, const BWord& v) {
  BWord w{u.algebra, u.coeffs};
  w.coeffs.back() *= v.coeffs.front();
  w.coeffs.insert(w.coeffs.end(), v.coeffs.begin() + 1, v.coeffs.end());
  return w;
}

const Element* MomentTable::find(const BWord& w) const {
  for (const auto& [word, value] : entries) {
    if (word.coeffs.size() != w.coeffs.size()) continue;
    bool same = true;
    for (std::size_t i = 0; same && i < w.coeffs.size(); ++i) {
      same = word.coeffs[i].matrix() == w.coeffs[i].matrix();
    }
    if (same) return &value;
  }
  return nullptr;
}

std::vector<BWord> standard_words(Algebra a, std::size_t max_degree) {
  std::vector<BWord> out;
  const auto units = basis(a);
  const bool trivial = units.size() == 1;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    out.push_back(BWord::units(a, n));
    if (n < 2 || trivial) continue;
    if (n <= kFullWordDegree) {
      // Every tuple of basis elements in the n - 1 inner slots.
      std::vector<std::size_t> digits(n - 1, 0);
      while (true) {
        BWord w = BWord::units(a, n);
        for (std::size_t i = 0; i < digits.size(); ++i) w.coeffs[i + 1] = units[digits[i]];
        out.push_back(std::move(w));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == units.size()) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
      continue;
    }
    for (const Element& e : units) {
      BWord w = BWord::units(a, n);
      for (std::size_t i = 1; i < n; ++i) w.coeffs[i] = e;
      out.push_back(std::move(w));
    }
  }
  return out;
}

namespace {

void check_word(const JacobiParams& params, const BWord& w, std::size_t cap) {
  w.validate();
  if (w.algebra.dim != params.algebra.dim) {
    throw AlgebraMismatch("word in " + w.algebra.to_string() + ", parameters in " + params.algebra.to_string());
  }
  if (w.degree() > cap) throw DegreeCapExceeded(w.degree(), cap);
}

// Pairs at depth >= the first zero alpha contribute nothing.
int truncation_depth(const JacobiParams& params) {
  for (std::size_t i = 1; i <= params.head_alpha.size(); ++i) {
    if (params.head_alpha[i - 1].is_zero()) return static_cast<int>(i);
  }
  if (params.tail_alpha.is_zero()) return static_cast<int>(params.head_alpha.size()) + 1;
  return kUnbounded;
}

Element evaluate(const JacobiParams& params, const BWord& w, const std::vector<int>& partner) {
  return detail::evaluate_blocks(
      partner, nullptr, w.coeffs,
      [&](Color, int depth) -> const Element& { return params.lambda(static_cast<std::size_t>(depth)); },
      [&](Color, int depth) -> const LinMap& { return params.alpha(static_cast<std::size_t>(depth)); });
}

}  // namespace

Element t_pi(const JacobiParams& params, const BWord& w, const Partition12& pi) {
  if (static_cast<std::size_t>(pi.size()) != w.degree()) throw std::invalid_argument("partition size differs from word degree");
  return evaluate(params, w, pi.partner_array());
}

Element moment(const JacobiParams& params, const BWord& w, std::size_t cap) {
  check_word(params, w, cap);
  const int n = static_cast<int>(w.degree());
  Element total(w.coeffs[0].algebra());
  bool first = true;
  for_each_nc12(n, {false, truncation_depth(params)}, [&](const Partition12& pi) {
    if (first) {
      total = evaluate(params, w, pi.partner_array());
      first = false;
    } else {
      total += evaluate(params, w, pi.partner_array());
    }
  });
  return total;
}

MomentTable moment_table(const JacobiParams& params, std::size_t max_degree) {
  MomentTable table{params.algebra, {}};
  for (BWord& w : standard_words(params.algebra, max_degree)) {
    Element value = moment(params, w);
    table.entries.emplace_back(std::move(w), std::move(value));
  }
  return table;
}

JacobiParams strip(const JacobiParams& params) {
  JacobiParams out = params;
  if (!out.head_lambda.empty()) out.head_lambda.erase(out.head_lambda.begin());
  if (!out.head_alpha.empty()) out.head_alpha.erase(out.head_alpha.begin());
  return out;
}

Element cf_approximant(const JacobiParams& params, std::size_t k, const Element& b) {
  if (k < 1) throw std::invalid_argument("continued fraction depth must be at least 1");
  const Element one = Element::unit(b.algebra());
  Element resolvent = one;
  for (std::size_t level = k; level >= 1; --level) {
    const Element inner = level == k ? b : b * resolvent;
    const Element denominator = one - params.lambda(level) * b - params.alpha(level).apply(inner) * b;
    try {
      resolvent = denominator.inverse();
    } catch (const SingularError&) {
      throw SingularError("continued fraction resolvent is singular at level " + std::to_string(level));
    }
  }
  return resolvent;
}

std::vector<Element> cf_series(const JacobiParams& params, std::size_t k, const Element& b, std::size_t order) {
  if (k < 1) throw std::invalid_argument("continued fraction depth must be at least 1");
  const Algebra a = b.algebra();
  // deeper level's series; the bottom level sees the constant series 1
  std::vector<Element> inner(order + 1, Element::zero(a));
  inner[0] = Element::unit(a);
  for (std::size_t level = k; level >= 1; --level) {
    std::vector<Element> denom(order + 1, Element::zero(a));
    denom[0] = Element::unit(a);
    if (order >= 1) denom[1] = -(params.lambda(level) * b);
    for (std::size_t j = 0; j + 2 <= order; ++j) {
      denom[j + 2] = -(params.alpha(level).apply(b * inner[j]) * b);
    }
    std::vector<Element> inv(order + 1, Element::zero(a));
    inv[0] = Element::unit(a);
    for (std::size_t n = 1; n <= order; ++n) {
      Element acc = Element::zero(a);
      for (std::size_t j = 1; j <= n; ++j) acc += denom[j] * inv[n - j];
      inv[n] = -acc;
    }
    inner = std::move(inv);
  }
  return inner;
}

namespace {

JacobiParams with_head(const JacobiParams& params, std::size_t levels) {
  JacobiParams out = params;
  while (out.head_lambda.size() < levels) out.head_lambda.push_back(out.tail_lambda);
  while (out.head_alpha.size() < levels) out.head_alpha.push_back(out.tail_alpha);
  return out;
}

}  // namespace

JacobiParams boolean_power(const JacobiParams& params, const LinMap& eta) {
  if (!(eta.algebra() == params.algebra)) throw AlgebraMismatch("Boolean power map algebra differs from parameters");
  JacobiParams out = with_head(params, 1);
  out.head_lambda[0] = eta.apply(out.head_lambda[0]);
  out.head_alpha[0] = compose(eta, out.head_alpha[0]);
  return out;
}

JacobiParams shift_by_delta(const JacobiParams& params, const Element& lambda) {
  JacobiParams out = params;
  for (Element& l : out.head_lambda) l += lambda;
  out.tail_lambda += lambda;
  out.validate();
  return out;
}

JacobiParams phi_transform(const JacobiParams& params) {
  JacobiParams out = with_head(params, params.head_length());
  out.head_lambda.insert(out.head_lambda.begin(), Element::zero(params.algebra));
  out.head_alpha.insert(out.head_alpha.begin(), LinMap::identity(params.algebra));
  return out;
}

JacobiParams amplify(const JacobiParams& params, int n) {
  JacobiParams out;
  out.algebra = Algebra::full(n * params.algebra.dim);
  out.positive = params.positive;
  for (const Element& l : params.head_lambda) out.head_lambda.push_back(amplify(l, n));
  for (const LinMap& m : params.head_alpha) out.head_alpha.push_back(amplify(m, n));
  out.tail_lambda = amplify(params.tail_lambda, n);
  out.tail_alpha = amplify(params.tail_alpha, n);
  return out;
}

BWord amplify(const BWord& w, int n) {
  BWord out{Algebra::full(n * w.algebra.dim), {}};
  for (const Element& c : w.coeffs) out.coeffs.push_back(amplify(c, n));
  return out;
}

}  // namespace ncfree
