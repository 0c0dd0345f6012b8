#pragma once

// JSON wire formats. Complex numbers are [re, im]; matrices are row-major
// arrays of rows. Parsers throw SchemaError carrying a JSON-pointer location.
//
// Inputs are read leniently: a complex entry may also be a plain number, an
// element may be given as {"algebra", "entries"}, a bare matrix, or a scalar
// (a multiple of the unit), and a map may be a scalar c (c times the
// identity), "identity", "zero", "flip", {"scalar": c}, {"kraus": [...]} or
// {"dense": matrix}.

#include "ncfree/jacobi.hpp"
#include "ncfree/joint.hpp"
#include "ncfree/matrix_algebra.hpp"
#include "ncfree/numeric.hpp"
#include "ncfree/scalar.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace ncfree::json {

using nlohmann::json;

json to_json(Complex c);
json to_json(const Matrix& m);
json to_json(const Algebra& a);
json to_json(const Element& e);
json to_json(const LinMap& m);
json to_json(const JacobiParams& p);
json to_json(const BWord& w);
json to_json(const ColoredWord& w);
json to_json(const MomentTable& t);
json to_json(const ConsistencyResult& r);
json to_json(const TwoByTwoReport& r);
/// Big integers are emitted as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise.
json bigint_to_json(const BigInt& b);
/// Rationals are emitted as "p/q" strings (integers as numbers).
json rational_to_json(const Rational& r);

Algebra algebra_from_json(const json& j, const std::string& where = "");
Element element_from_json(const json& j, const Algebra& a, const std::string& where = "");
LinMap map_from_json(const json& j, const Algebra& a, const std::string& where = "");
/// Accepts the explicit parameter layout or {"family": name, ...} with the
/// family arguments (see make_named).
JacobiParams params_from_json(const json& j, const std::string& where = "");
BWord word_from_json(const json& j, const std::string& where = "");
/// coeffs may list d + 1 coefficients or only the d - 1 inner ones.
ColoredWord colored_word_from_json(const json& j, const std::string& where = "");
JointModel model_from_json(const json& j, const std::string& where = "");

/// Named families: point_mass{lambda}, semicircular{alpha, mean?},
/// bernoulli{lambda1, lambda2, alpha}, two_point{t, a, c},
/// free_poisson{lambda, alpha, mean?}, meixner{lambda, alpha, eta},
/// arcsine{alpha}, free_binomial{eta, alpha}.
JacobiParams make_named(const json& j, const std::string& where = "");

}  // namespace ncfree::json
