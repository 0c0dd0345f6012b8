// ncfree: counting, moments, convolution and verification from the shell.
//
// Exit codes: 0 success, 1 failed check, 2 usage or input error, 3 degree cap.

#include "verify_suites.hpp"

#include <ncfree/errors.hpp>
#include <ncfree/jacobi.hpp>
#include <ncfree/joint.hpp>
#include <ncfree/json_io.hpp>
#include <ncfree/partitions.hpp>
#include <ncfree/scalar.hpp>

#include <CLI/CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ncfree;
using Json = nlohmann::json;

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr double kOracleTol = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool pretty = false;

  std::string family;
  int n = 0;
  std::optional<int> k;
  std::optional<int> l;
  std::string method = "dynamic";

  int kmax = 0;
  int nmax = 0;

  std::string params_file;
  std::string model_file;
  std::string word_file;
  bool oracle = false;

  std::string p1_file;
  std::string p2_file;
  std::size_t degree = 0;

  std::string suite;
};

void emit(const Options& o, const Json& j) { std::cout << (o.pretty ? j.dump(2) : j.dump()) << '\n'; }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", path + ": " + e.what());
  }
}

CountMethod parse_method(const std::string& m) {
  if (m == "enumerate") return CountMethod::enumerate;
  if (m == "recursion") return CountMethod::recursion;
  if (m == "cumulant") return CountMethod::cumulant;
  return CountMethod::dynamic;
}

std::string bound_text(int b) { return b == kUnbounded ? "inf" : std::to_string(b); }

// ---- count ----

int run_count(const Options& o) {
  const bool two_color = o.family == "TCNC2";
  if (o.n < 0) throw UsageError("--n must be nonnegative");
  if (o.k && *o.k < 1) throw UsageError("--k must be at least 1");
  if (o.l && *o.l < 1) throw UsageError("--l must be at least 1");
  if (!two_color && o.l) throw UsageError("--l applies to TCNC2 only");
  if (two_color && o.k.has_value() != o.l.has_value()) throw UsageError("TCNC2 takes --k and --l together");
  if (!two_color && (o.method == "recursion" || o.method == "cumulant")) {
    throw UsageError("--method " + o.method + " applies to TCNC2 only");
  }
  const int k = o.k.value_or(kUnbounded);
  const int l = o.l.value_or(kUnbounded);
  if (o.method == "recursion" && k != l) throw UsageError("--method recursion needs k == l");

  std::vector<std::string> methods;
  if (o.method != "all") {
    methods.push_back(o.method);
  } else if (two_color) {
    methods.push_back("enumerate");
    if (k == l) methods.push_back("recursion");
    methods.push_back("cumulant");
  } else {
    methods = {"dynamic", "enumerate"};
  }

  std::vector<BigInt> values;
  for (const auto& m : methods) {
    if (two_color) {
      values.push_back(tcnc2_count(k, l, o.n, parse_method(m)));
      continue;
    }
    const auto family = o.family == "NC2" ? FamilyDescriptor::nc2(k) : FamilyDescriptor::nc12(k);
    values.push_back(m == "enumerate" ? count_by_enumeration(family, o.n) : count_family(family, o.n));
  }

  std::string label = o.family;
  if (two_color) {
    label += "^{" + bound_text(k) + "," + bound_text(l) + "}";
  } else if (k != kUnbounded) {
    label += "^" + std::to_string(k);
  }
  label += "(" + std::to_string(o.n) + ")";
  bool agree = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (o.pretty) {
      std::cout << label << " by " << methods[i] << ": " << values[i] << '\n';
    } else {
      std::cout << values[i] << '\n';
    }
    agree = agree && values[i] == values.front();
  }
  if (!agree) {
    std::cerr << "methods disagree for " << label << '\n';
    return kExitCheck;
  }
  return 0;
}

// ---- table ----

std::vector<BigInt> table_row(int k, int pairs, const std::string& method) {
  return tcnc2_diagonal_counts(k, pairs, parse_method(method));
}

int run_table(const Options& o) {
  if (o.kmax < 2) throw UsageError("--kmax must be at least 2");
  if (o.nmax < 2 || o.nmax % 2 != 0) throw UsageError("--nmax must be even and at least 2");
  if (o.method == "all") throw UsageError("table takes a single --method");
  const int pairs = o.nmax / 2;

  std::vector<std::string> labels;
  std::vector<std::vector<BigInt>> rows;
  for (int k = 2; k <= o.kmax; ++k) {
    labels.push_back(std::to_string(k));
    rows.push_back(table_row(k, pairs, o.method));
  }
  // Two equal consecutive rows past kmax mark the stabilized row.
  const auto next = table_row(o.kmax + 1, pairs, o.method);
  if (next == table_row(o.kmax + 2, pairs, o.method)) {
    labels.push_back("k>" + std::to_string(o.kmax));
    rows.push_back(next);
  }

  std::vector<std::vector<std::string>> cells;
  cells.emplace_back(std::vector<std::string>{"k"});
  for (int p = 1; p <= pairs; ++p) cells.front().push_back("n=" + std::to_string(2 * p));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> line{labels[r]};
    for (const auto& v : rows[r]) line.push_back(v.str());
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (o.pretty) {
        std::cout << (c == 0 ? "" : "  ") << std::setw(static_cast<int>(width[c])) << line[c];
      } else {
        std::cout << (c == 0 ? "" : "\t") << line[c];
      }
    }
    std::cout << '\n';
  }
  return 0;
}

// ---- moments, joint, convolve ----

double relative_deviation(const Element& a, const Element& b) {
  const double scale = std::max({1.0, a.matrix().norm(), b.matrix().norm()});
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / scale;
}

int emit_value(const Options& o, const Element& value, const std::optional<Element>& oracle) {
  if (!oracle) {
    emit(o, json::to_json(value));
    return 0;
  }
  const double dev = relative_deviation(value, *oracle);
  emit(o, {{"value", json::to_json(value)}, {"oracle", json::to_json(*oracle)}, {"max_deviation", dev}});
  if (dev > kOracleTol) {
    std::cerr << "oracle deviation " << dev << " exceeds " << kOracleTol << '\n';
    return kExitCheck;
  }
  return 0;
}

int run_moments(const Options& o) {
  const auto params = json::params_from_json(read_json(o.params_file));
  const auto word = json::word_from_json(read_json(o.word_file));
  if (word.algebra != params.algebra) throw SchemaError("/algebra", "word algebra differs from the parameters");
  const Element value = moment(params, word);
  return emit_value(o, value, o.oracle ? std::optional<Element>(fock_moment(params, word)) : std::nullopt);
}

int run_joint(const Options& o) {
  const auto model = json::model_from_json(read_json(o.model_file));
  const auto word = json::colored_word_from_json(read_json(o.word_file));
  if (word.algebra != model.params1.algebra) throw SchemaError("/algebra", "word algebra differs from the model");
  const Element value = joint_moment(model, word);
  return emit_value(o, value,
                    o.oracle ? std::optional<Element>(joint_moment_free_recursion(model, word)) : std::nullopt);
}

int run_convolve(const Options& o) {
  const JointModel model{json::params_from_json(read_json(o.p1_file)), json::params_from_json(read_json(o.p2_file))};
  if (model.params1.algebra != model.params2.algebra) {
    throw SchemaError("/algebra", "the two parameter sets live in different algebras");
  }
  if (o.degree > default_degree_cap()) throw DegreeCapExceeded(o.degree, default_degree_cap());
  emit(o, json::to_json(free_convolve_moments(model, o.degree)));
  return 0;
}

// ---- verify ----

int run_verify(const Options& o) {
  std::vector<std::string> names =
      o.suite == "all" ? cli::suite_names() : std::vector<std::string>{o.suite};
  Json reports = Json::array();
  bool pass = true;
  for (const auto& name : names) {
    const auto result = cli::run_suite(name);
    if (!result.pass) std::cerr << "FAIL " << name << ": " << result.failure << '\n';
    pass = pass && result.pass;
    reports.push_back(result.report);
  }
  emit(o, o.suite == "all" ? Json{{"pass", pass}, {"suites", reports}} : reports.front());
  return pass ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Operator-valued Jacobi parameters, two-color partitions and free convolution"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", o.pretty, "Human-readable output");

  auto* count = app.add_subcommand("count", "Count non-crossing partitions of a family");
  count->add_option("--family", o.family)->required()->check(CLI::IsMember({"NC12", "NC2", "TCNC2"}));
  count->add_option("--n", o.n, "Number of points")->required();
  count->add_option("--k", o.k, "Depth bound (blue bound for TCNC2)");
  count->add_option("--l", o.l, "Red depth bound (TCNC2)");
  count->add_option("--method", o.method)
      ->check(CLI::IsMember({"dynamic", "enumerate", "recursion", "cumulant", "all"}));

  auto* table = app.add_subcommand("table", "TSV of |TCNC_2^{k,k}(n)|");
  table->add_option("--kmax", o.kmax)->required();
  table->add_option("--nmax", o.nmax)->required();
  table->add_option("--method", o.method)->check(CLI::IsMember({"dynamic", "enumerate", "recursion", "cumulant"}));

  auto* moments = app.add_subcommand("moments", "Operator-valued moment of a word");
  moments->add_option("--params", o.params_file)->required();
  moments->add_option("--word", o.word_file)->required();
  moments->add_flag("--oracle", o.oracle, "Compare against the Fock-space construction");

  auto* joint = app.add_subcommand("joint", "Joint moment of a two-color word");
  joint->add_option("--model", o.model_file)->required();
  joint->add_option("--word", o.word_file)->required();
  joint->add_flag("--oracle", o.oracle, "Compare against the freeness recursion");

  auto* convolve = app.add_subcommand("convolve", "Moment table of the free convolution");
  convolve->add_option("--p1", o.p1_file)->required();
  convolve->add_option("--p2", o.p2_file)->required();
  convolve->add_option("--degree", o.degree)->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suites = cli::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (count->parsed()) return run_count(o);
    if (table->parsed()) return run_table(o);
    if (moments->parsed()) return run_moments(o);
    if (joint->parsed()) return run_joint(o);
    if (convolve->parsed()) return run_convolve(o);
    if (verify->parsed()) return run_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegreeCapExceeded& e) {
    std::cerr << e.what() << " (set NCFREE_DEGREE_CAP to raise it)\n";
    return kExitCap;
  } catch (const AlgebraMismatch& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
  return kExitUsage;
}
