#include "verify_suites.hpp"

#include <ncfree/jacobi.hpp>
#include <ncfree/joint.hpp>
#include <ncfree/json_io.hpp>
#include <ncfree/scalar.hpp>

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ncfree::cli {
namespace {

using Json = nlohmann::json;

// Reference values of |TCNC_2^{k,k}(n)| for n = 2, 4, ..., 12; the last row
// is the stabilized one (any k > 6).
constexpr std::array<std::array<long, 6>, 6> kReferenceTable{{
    {2, 6, 20, 70, 252, 924},
    {2, 8, 38, 196, 1062, 5948},
    {2, 8, 40, 222, 1308, 8014},
    {2, 8, 40, 224, 1342, 8404},
    {2, 8, 40, 224, 1344, 8446},
    {2, 8, 40, 224, 1344, 8448},
}};
constexpr int kTablePairs = 6;

std::string row_label(std::size_t row) { return row + 1 < kReferenceTable.size() ? std::to_string(row + 2) : "k>6"; }

BigInt binomial(int n, int r) {
  BigInt b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

SuiteResult table_suite() {
  SuiteResult out{"table", true, "", Json::object()};
  const std::array<std::pair<const char*, CountMethod>, 3> methods{
      {{"enumerate", CountMethod::enumerate}, {"recursion", CountMethod::recursion}, {"cumulant", CountMethod::cumulant}}};
  Json entries = Json::array();
  int matched = 0;
  for (std::size_t row = 0; row < kReferenceTable.size(); ++row) {
    // Row k = 7 already equals the limit for partitions of 12 points.
    const int k = static_cast<int>(row) + 2;
    std::array<std::vector<BigInt>, 3> counts;
    for (std::size_t m = 0; m < methods.size(); ++m) counts[m] = tcnc2_diagonal_counts(k, kTablePairs, methods[m].second);
    for (int p = 1; p <= kTablePairs; ++p) {
      const BigInt expected = kReferenceTable[row][static_cast<std::size_t>(p - 1)];
      Json entry{{"row", row_label(row)}, {"n", 2 * p}, {"expected", json::bigint_to_json(expected)}};
      bool ok = true;
      for (std::size_t m = 0; m < methods.size(); ++m) {
        const BigInt& got = counts[m][static_cast<std::size_t>(p - 1)];
        entry[methods[m].first] = json::bigint_to_json(got);
        ok = ok && got == expected;
      }
      entry["pass"] = ok;
      if (ok) {
        ++matched;
      } else if (out.failure.empty()) {
        out.failure = "row " + row_label(row) + ", n = " + std::to_string(2 * p);
      }
      entries.push_back(std::move(entry));
    }
  }

  // Closed forms for the first and the stabilized rows.
  bool identities = true;
  for (int p = 1; p <= kTablePairs; ++p) {
    const auto col = static_cast<std::size_t>(p - 1);
    const BigInt catalan = binomial(2 * p, p) / (p + 1);
    identities = identities && BigInt(kReferenceTable.front()[col]) == binomial(2 * p, p) &&
                 BigInt(kReferenceTable.back()[col]) == (BigInt(1) << p) * catalan;
  }
  if (!identities && out.failure.empty()) out.failure = "row identities";

  const int total = static_cast<int>(kReferenceTable.size()) * kTablePairs;
  out.pass = matched == total && identities;
  out.report = {{"suite", "table"},
                {"pass", out.pass},
                {"matched", matched},
                {"total", total},
                {"row_identities", identities},
                {"entries", std::move(entries)}};
  return out;
}

SuiteResult counterexample_suite() {
  SuiteResult out{"counterexample", true, "", Json::object()};
  const Algebra d2 = Algebra::diagonal(2);
  const Element zero = Element::zero(d2);
  const JointModel bernoulli_pair{bernoulli(zero, zero, LinMap::flip(d2)), bernoulli(zero, zero, LinMap::identity(d2))};
  const auto bern = verify_jacobi_consistency(free_convolve_moments(bernoulli_pair, 4), d2);
  const JointModel semi_pair{semicircular(LinMap::flip(d2)), semicircular(LinMap::identity(d2))};
  const auto semi = verify_jacobi_consistency(free_convolve_moments(semi_pair, 4), d2);

  const bool witness_found = !bern.consistent() && bern.witness.has_value();
  if (!witness_found) out.failure = "bernoulli(flip) + bernoulli(identity) admitted Jacobi parameters";
  if (!semi.consistent() && out.failure.empty()) out.failure = "semicircular(flip) + semicircular(identity) rejected";
  out.pass = witness_found && semi.consistent();
  out.report = {{"suite", "counterexample"},
                {"pass", out.pass},
                {"bernoulli_sum", json::to_json(bern)},
                {"semicircular_sum", json::to_json(semi)}};
  return out;
}

SuiteResult two_by_two_suite() {
  SuiteResult out{"two_by_two", true, "", Json::object()};
  constexpr double kTol = 1e-8;
  const std::array<std::pair<Complex, Complex>, 10> points{{
      {{3.0, 0.0}, {3.0, 0.0}},
      {{2.5, 0.0}, {-3.0, 0.0}},
      {{0.0, 3.0}, {2.0, 1.0}},
      {{-4.0, 0.0}, {0.0, 1.5}},
      {{1.0, 2.0}, {3.0, -1.0}},
      {{2.5, 2.5}, {-2.2, 0.0}},
      {{-3.0, -1.0}, {-3.0, 1.0}},
      {{0.0, 4.0}, {0.0, -4.0}},
      {{2.2, 0.0}, {0.0, 2.2}},
      {{6.0, 0.0}, {-2.5, 0.5}},
  }};
  Json checks = Json::array();
  double worst = 0.0;
  for (const auto& [lambda, gamma] : points) {
    const auto r = two_by_two_model_check(lambda, gamma);
    const double res = std::max({r.residual, r.inverse_residual, r.linearization_residual});
    worst = std::max(worst, res);
    if (res >= kTol && out.failure.empty()) {
      std::ostringstream s;
      s << "lambda = " << lambda << ", gamma = " << gamma;
      out.failure = s.str();
    }
    checks.push_back({{"lambda", json::to_json(lambda)},
                      {"gamma", json::to_json(gamma)},
                      {"residual", r.residual},
                      {"inverse_residual", r.inverse_residual},
                      {"linearization_residual", r.linearization_residual},
                      {"series_terms", r.series_terms}});
  }

  // At lambda = gamma = z both entries of F equal sqrt(z^2 - 4), on the
  // branch asymptotic to z.
  Json diagonal = Json::array();
  for (Complex z : {Complex(3.0, 0.0), Complex(0.5, 2.5), Complex(-4.0, 1.0), Complex(0.0, 5.0)}) {
    const auto r = two_by_two_model_check(z, z);
    const Complex root = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
    const double dev = std::max(std::abs(r.f_conv_closed[0] - root), std::abs(r.f_conv_closed[1] - root));
    worst = std::max(worst, dev);
    if (dev >= kTol && out.failure.empty()) {
      std::ostringstream s;
      s << "sqrt(z^2 - 4) at z = " << z;
      out.failure = s.str();
    }
    diagonal.push_back({{"z", json::to_json(z)}, {"root", json::to_json(root)}, {"deviation", dev}});
  }
  out.pass = out.failure.empty();
  out.report = {{"suite", "two_by_two"},
                {"pass", out.pass},
                {"tolerance", kTol},
                {"max_residual", worst},
                {"points", std::move(checks)},
                {"equal_arguments", std::move(diagonal)}};
  return out;
}

SuiteResult poisson_limit_suite() {
  SuiteResult out{"poisson_limit", true, "", Json::object()};
  const Algebra s = Algebra::scalar();
  const Element one = Element::unit(s);
  const BWord fourth = BWord::units(s, 4);
  Json levels = Json::array();
  std::vector<double> errors;
  for (long n : {10L, 100L, 1000L}) {
    const auto limit = poisson_limit_check(n, one, one, LinMap::identity(s), 4);
    const Element* got = limit.convolved_moments.find(fourth);
    const Element* want = limit.target_moments.find(fourth);
    if (got == nullptr || want == nullptr) throw std::logic_error("degree 4 moment missing from the Poisson tables");
    errors.push_back(std::abs((*got)(0, 0) - (*want)(0, 0)));
    levels.push_back({{"N", n}, {"moment", json::to_json((*got)(0, 0))}, {"target", json::to_json((*want)(0, 0))},
                      {"error", errors.back()}});
  }
  // Linear decay means a factor of 10 per decade; accept within a factor 2.
  Json ratios = Json::array();
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    ratios.push_back(ratio);
    if (!(ratio >= 5.0 && ratio <= 20.0) && out.failure.empty()) {
      out.failure = "error ratio " + std::to_string(ratio) + " between N = " + std::to_string(i == 1 ? 10 : 100) +
                    " and the next level";
    }
  }
  out.pass = out.failure.empty();
  out.report = {{"suite", "poisson_limit"}, {"pass", out.pass}, {"levels", std::move(levels)}, {"ratios", ratios}};
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"table", "counterexample", "two_by_two", "poisson_limit"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  if (name == "table") return table_suite();
  if (name == "counterexample") return counterexample_suite();
  if (name == "two_by_two") return two_by_two_suite();
  if (name == "poisson_limit") return poisson_limit_suite();
  throw std::invalid_argument("unknown suite " + name);
}

}  // namespace ncfree::cli
