#include "ncfree/json_io.hpp"

#include "ncfree/errors.hpp"

#include <limits>

namespace ncfree::json {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(where, key), "missing field");
  return *it;
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw SchemaError(where, "expected a number or [re, im]");
}

bool looks_like_matrix(const json& j) { return j.is_array() && !j.empty() && j[0].is_array(); }

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw SchemaError(at(where, 0), "expected a row array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string row_at = at(where, static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw SchemaError(row_at, "ragged matrix row");
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], at(row_at, static_cast<std::size_t>(c)));
    }
  }
  return m;
}

template <class F>
auto guarded(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(where.empty() ? "/" : where, e.what());
  }
}

}  // namespace

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Algebra& a) {
  return {{"kind", a.kind == AlgebraKind::full ? "full" : "diagonal"}, {"dim", a.dim}};
}

json to_json(const Element& e) { return {{"algebra", to_json(e.algebra())}, {"entries", to_json(e.matrix())}}; }

json to_json(const LinMap& m) {
  if (m.is_kraus()) {
    json ops = json::array();
    for (const Matrix& op : *m.kraus_ops()) ops.push_back(to_json(op));
    return {{"kraus", std::move(ops)}};
  }
  return {{"dense", to_json(m.dense_matrix())}};
}

json to_json(const JacobiParams& p) {
  json out;
  out["algebra"] = to_json(p.algebra);
  out["head_lambda"] = json::array();
  for (const Element& e : p.head_lambda) out["head_lambda"].push_back(to_json(e));
  out["head_alpha"] = json::array();
  for (const LinMap& m : p.head_alpha) out["head_alpha"].push_back(to_json(m));
  out["tail_lambda"] = to_json(p.tail_lambda);
  out["tail_alpha"] = to_json(p.tail_alpha);
  out["positive"] = p.positive;
  return out;
}

json to_json(const BWord& w) {
  json coeffs = json::array();
  for (const Element& e : w.coeffs) coeffs.push_back(to_json(e));
  return {{"algebra", to_json(w.algebra)}, {"coeffs", std::move(coeffs)}};
}

json to_json(const ColoredWord& w) {
  json colors = json::array();
  for (Color c : w.colors) colors.push_back(static_cast<int>(c));
  json coeffs = json::array();
  for (const Element& e : w.coeffs) coeffs.push_back(to_json(e));
  return {{"algebra", to_json(w.algebra)}, {"colors", std::move(colors)}, {"coeffs", std::move(coeffs)}};
}

json to_json(const MomentTable& t) {
  json entries = json::array();
  for (const auto& [word, value] : t.entries) {
    json coeffs = json::array();
    for (const Element& e : word.coeffs) coeffs.push_back(to_json(e.matrix()));
    entries.push_back({{"degree", word.degree()}, {"coeffs", std::move(coeffs)}, {"value", to_json(value.matrix())}});
  }
  return {{"algebra", to_json(t.algebra)}, {"moments", std::move(entries)}};
}

json to_json(const ConsistencyResult& r) {
  if (r.params) return {{"consistent", true}, {"params", to_json(*r.params)}};
  json out{{"consistent", false}};
  json witness;
  witness["unknowns"] = r.witness->unknowns;
  witness["residual"] = r.witness->residual;
  json constraints = json::array();
  for (const LinearConstraint& c : r.witness->constraints) {
    json coeffs = json::array();
    for (Complex v : c.coefficients) coeffs.push_back(to_json(v));
    constraints.push_back({{"tuple", c.tuple}, {"entry", c.entry}, {"coefficients", std::move(coeffs)},
                           {"rhs", to_json(c.rhs)}});
  }
  witness["constraints"] = std::move(constraints);
  out["witness"] = std::move(witness);
  return out;
}

json to_json(const TwoByTwoReport& r) {
  auto pair = [](const std::array<Complex, 2>& v) { return json::array({to_json(v[0]), to_json(v[1])}); };
  return {{"lambda", to_json(r.lambda)},
          {"gamma", to_json(r.gamma)},
          {"G_mu", pair(r.g_mu)},
          {"F_mu", pair(r.f_mu)},
          {"F_mu_inverse", pair(r.f_mu_inverse)},
          {"F_conv_closed", pair(r.f_conv_closed)},
          {"G_conv_series", pair(r.g_conv_series)},
          {"F_conv_series", pair(r.f_conv_series)},
          {"series_terms", r.series_terms},
          {"residual", r.residual},
          {"inverse_residual", r.inverse_residual},
          {"linearization_residual", r.linearization_residual}};
}

json bigint_to_json(const BigInt& b) {
  if (b >= std::numeric_limits<long long>::min() && b <= std::numeric_limits<long long>::max()) {
    return b.convert_to<long long>();
  }
  return b.str();
}

json rational_to_json(const Rational& r) {
  if (denominator(r) == 1) return bigint_to_json(BigInt(numerator(r)));
  return r.str();
}

Algebra algebra_from_json(const json& j, const std::string& where) {
  const json& kind = field(j, "kind", where);
  const json& dim = field(j, "dim", where);
  if (!dim.is_number_integer() || dim.get<long>() < 1) throw SchemaError(at(where, "dim"), "expected a positive integer");
  if (kind == "full") return Algebra::full(dim.get<int>());
  if (kind == "diagonal") return Algebra::diagonal(dim.get<int>());
  throw SchemaError(at(where, "kind"), "expected \"full\" or \"diagonal\"");
}

Element element_from_json(const json& j, const Algebra& a, const std::string& where) {
  return guarded(where, [&] {
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
      return Element::scalar(a, complex_from_json(j, where));
    }
    if (j.is_object()) {
      if (j.contains("algebra")) {
        const Algebra own = algebra_from_json(j["algebra"], at(where, "algebra"));
        if (own.dim != a.dim) throw SchemaError(at(where, "algebra"), "dimension differs from " + a.to_string());
      }
      return Element(a, matrix_from_json(field(j, "entries", where), at(where, "entries")));
    }
    if (looks_like_matrix(j)) return Element(a, matrix_from_json(j, where));
    throw SchemaError(where.empty() ? "/" : where, "expected an algebra element");
  });
}

LinMap map_from_json(const json& j, const Algebra& a, const std::string& where) {
  return guarded(where, [&] {
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
      return complex_from_json(j, where) * LinMap::identity(a);
    }
    if (j.is_string()) {
      const auto name = j.get<std::string>();
      if (name == "identity") return LinMap::identity(a);
      if (name == "zero") return LinMap::zero(a);
      if (name == "flip") return LinMap::flip(a);
      throw SchemaError(where, "unknown map name \"" + name + "\"");
    }
    if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected a linear map");
    if (j.contains("kraus")) {
      const json& ops = j["kraus"];
      if (!ops.is_array()) throw SchemaError(at(where, "kraus"), "expected an array of matrices");
      std::vector<Matrix> mats;
      for (std::size_t i = 0; i < ops.size(); ++i) mats.push_back(matrix_from_json(ops[i], at(at(where, "kraus"), i)));
      return LinMap::kraus(a, std::move(mats));
    }
    if (j.contains("dense")) return LinMap::dense(a, matrix_from_json(j["dense"], at(where, "dense")));
    if (j.contains("scalar")) return LinMap::scalar(a, complex_from_json(j["scalar"], at(where, "scalar")));
    throw SchemaError(where.empty() ? "/" : where, "expected one of kraus, dense, scalar");
  });
}

JacobiParams params_from_json(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("family")) return make_named(j, where);
  return guarded(where, [&] {
    JacobiParams p;
    p.algebra = algebra_from_json(field(j, "algebra", where), at(where, "algebra"));
    const json& lambdas = field(j, "head_lambda", where);
    const json& alphas = field(j, "head_alpha", where);
    if (!lambdas.is_array()) throw SchemaError(at(where, "head_lambda"), "expected an array");
    if (!alphas.is_array()) throw SchemaError(at(where, "head_alpha"), "expected an array");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      p.head_lambda.push_back(element_from_json(lambdas[i], p.algebra, at(at(where, "head_lambda"), i)));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      p.head_alpha.push_back(map_from_json(alphas[i], p.algebra, at(at(where, "head_alpha"), i)));
    }
    p.tail_lambda = element_from_json(field(j, "tail_lambda", where), p.algebra, at(where, "tail_lambda"));
    p.tail_alpha = map_from_json(field(j, "tail_alpha", where), p.algebra, at(where, "tail_alpha"));
    if (j.contains("positive")) {
      if (!j["positive"].is_boolean()) throw SchemaError(at(where, "positive"), "expected a boolean");
      p.positive = j["positive"].get<bool>();
    }
    p.validate();
    return p;
  });
}

BWord word_from_json(const json& j, const std::string& where) {
  return guarded(where, [&] {
    BWord w;
    w.algebra = algebra_from_json(field(j, "algebra", where), at(where, "algebra"));
    const json& coeffs = field(j, "coeffs", where);
    if (!coeffs.is_array() || coeffs.empty()) throw SchemaError(at(where, "coeffs"), "expected a non-empty array");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      w.coeffs.push_back(element_from_json(coeffs[i], w.algebra, at(at(where, "coeffs"), i)));
    }
    return w;
  });
}

ColoredWord colored_word_from_json(const json& j, const std::string& where) {
  return guarded(where, [&] {
    ColoredWord w;
    w.algebra = algebra_from_json(field(j, "algebra", where), at(where, "algebra"));
    const json& colors = field(j, "colors", where);
    if (!colors.is_array()) throw SchemaError(at(where, "colors"), "expected an array");
    for (std::size_t i = 0; i < colors.size(); ++i) {
      const json& c = colors[i];
      if (c == 1) {
        w.colors.push_back(Color::blue);
      } else if (c == 2) {
        w.colors.push_back(Color::red);
      } else {
        throw SchemaError(at(at(where, "colors"), i), "colors are 1 (blue) or 2 (red)");
      }
    }
    const json& coeffs = field(j, "coeffs", where);
    if (!coeffs.is_array()) throw SchemaError(at(where, "coeffs"), "expected an array");
    const std::size_t d = w.colors.size();
    const bool inner_only = d > 0 && coeffs.size() + 1 == d;
    if (!inner_only && coeffs.size() != d + 1) {
      throw SchemaError(at(where, "coeffs"), "expected " + std::to_string(d + 1) + " or " +
                                                 std::to_string(d == 0 ? 0 : d - 1) + " coefficients");
    }
    if (inner_only) w.coeffs.push_back(Element::unit(w.algebra));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      w.coeffs.push_back(element_from_json(coeffs[i], w.algebra, at(at(where, "coeffs"), i)));
    }
    if (inner_only) w.coeffs.push_back(Element::unit(w.algebra));
    return w;
  });
}

JointModel model_from_json(const json& j, const std::string& where) {
  JointModel m{params_from_json(field(j, "params1", where), at(where, "params1")),
               params_from_json(field(j, "params2", where), at(where, "params2"))};
  guarded(where, [&] {
    m.validate();
    return 0;
  });
  return m;
}

JacobiParams make_named(const json& j, const std::string& where) {
  return guarded(where, [&] {
    const json& name_json = field(j, "family", where);
    if (!name_json.is_string()) throw SchemaError(at(where, "family"), "expected a family name");
    const auto name = name_json.get<std::string>();
    const Algebra a = j.contains("algebra") ? algebra_from_json(j["algebra"], at(where, "algebra")) : Algebra::scalar();
    auto element = [&](const std::string& key) { return element_from_json(field(j, key, where), a, at(where, key)); };
    auto optional_element = [&](const std::string& key) {
      return j.contains(key) ? element(key) : Element::zero(a);
    };
    auto map = [&](const std::string& key) { return map_from_json(field(j, key, where), a, at(where, key)); };

    JacobiParams p;
    if (name == "point_mass") {
      p = point_mass(element("lambda"));
    } else if (name == "semicircular") {
      p = semicircular(map("alpha"), optional_element("mean"));
    } else if (name == "bernoulli") {
      p = bernoulli(element("lambda1"), element("lambda2"), map("alpha"));
    } else if (name == "two_point") {
      const json& t = field(j, "t", where);
      if (!t.is_number()) throw SchemaError(at(where, "t"), "expected a number");
      p = two_point(t.get<double>(), element("a"), element("c"));
    } else if (name == "free_poisson") {
      p = free_poisson(element("lambda"), map("alpha"), optional_element("mean"));
    } else if (name == "meixner") {
      p = meixner(element("lambda"), map("alpha"), map("eta"));
    } else if (name == "arcsine") {
      p = arcsine(map("alpha"));
    } else if (name == "free_binomial") {
      p = free_binomial(map("eta"), map("alpha"));
    } else {
      throw SchemaError(at(where, "family"), "unknown family \"" + name + "\"");
    }
    if (j.contains("positive")) p.positive = j["positive"].get<bool>();
    p.validate();
    return p;
  });
}

}  // namespace ncfree::json
