#include "ncfree/joint.hpp"

#include "block_eval.hpp"
#include "ncfree/errors.hpp"

#include <cstring>
#include <map>
#include <stdexcept>
#include <string>

namespace ncfree {

void ColoredWord::validate() const {
  if (coeffs.size() != colors.size() + 1) {
    throw std::invalid_argument("a colored word with d symbols needs d + 1 coefficients");
  }
  for (const Element& c : coeffs) {
    if (c.dim() != algebra.dim) throw AlgebraMismatch("word coefficient outside " + algebra.to_string());
  }
}

ColoredWord ColoredWord::units(Algebra a, std::vector<Color> colors) {
  ColoredWord w{a, std::vector<Element>(colors.size() + 1, Element::unit(a)), std::move(colors)};
  return w;
}

ColoredWord ColoredWord::colored(const BWord& w, std::vector<Color> colors) {
  ColoredWord out{w.algebra, w.coeffs, std::move(colors)};
  out.validate();
  return out;
}

std::vector<Color> ColoredWord::position_colors() const {
  std::vector<Color> out{Color::blue};
  out.insert(out.end(), colors.begin(), colors.end());
  return out;
}

void JointModel::validate() const {
  params1.validate();
  params2.validate();
  if (!(params1.algebra == params2.algebra)) throw AlgebraMismatch("joint model marginals live in different algebras");
}

namespace {

void check_word(const JointModel& model, const ColoredWord& w, std::size_t cap) {
  w.validate();
  if (w.algebra.dim != model.params1.algebra.dim) throw AlgebraMismatch("word and model live in different algebras");
  if (w.degree() > cap) throw DegreeCapExceeded(w.degree(), cap);
}

int truncation_depth(const JacobiParams& params) {
  for (std::size_t i = 1; i <= params.head_alpha.size(); ++i) {
    if (params.head_alpha[i - 1].is_zero()) return static_cast<int>(i);
  }
  if (params.tail_alpha.is_zero()) return static_cast<int>(params.head_alpha.size()) + 1;
  return kUnbounded;
}

Element evaluate(const JointModel& model, const ColoredWord& w, const ColoredPartition& pi) {
  return detail::evaluate_blocks(
      pi.base().partner_array(), &pi.position_colors(), w.coeffs,
      [&](Color c, int depth) -> const Element& { return model.params(c).lambda(static_cast<std::size_t>(depth)); },
      [&](Color c, int depth) -> const LinMap& { return model.params(c).alpha(static_cast<std::size_t>(depth)); });
}

}  // namespace

Element e_pi(const JointModel& model, const ColoredWord& w, const ColoredPartition& pi) {
  w.validate();
  if (static_cast<std::size_t>(pi.size()) != w.degree()) throw std::invalid_argument("partition size differs from word degree");
  for (int i = 1; i <= pi.size(); ++i) {
    if (pi.color_at(i) != w.colors[static_cast<std::size_t>(i - 1)]) {
      throw std::invalid_argument("partition coloring does not match the word at position " + std::to_string(i));
    }
  }
  return evaluate(model, w, pi);
}

Element joint_moment(const JointModel& model, const ColoredWord& w, std::size_t cap) {
  check_word(model, w, cap);
  TcncOptions options;
  options.blue_bound = truncation_depth(model.params1);
  options.red_bound = truncation_depth(model.params2);
  options.required_colors = w.position_colors();
  Element total = Element::zero(w.coeffs[0].algebra());
  for_each_tcnc(static_cast<int>(w.degree()), options,
                [&](const ColoredPartition& pi) { total += evaluate(model, w, pi); });
  return total;
}

namespace {

// Inclusion-exclusion over the maximal monochromatic intervals of a word.
// Replacing an interval by its expectation folds it into the neighbouring
// coefficients, which may join two intervals of the same color.
class FreenessRecursion {
 public:
  explicit FreenessRecursion(const JointModel& model) : model_(model) {}

  Element expect(const ColoredWord& w) {
    if (w.colors.empty()) return w.coeffs[0];
    const std::string key = fingerprint(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<std::pair<std::size_t, std::size_t>> intervals;  // [first, last] symbol indices
    for (std::size_t i = 0; i < w.colors.size(); ++i) {
      if (i == 0 || w.colors[i] != w.colors[i - 1]) {
        intervals.emplace_back(i, i);
      } else {
        intervals.back().second = i;
      }
    }

    Element result = Element::zero(w.coeffs[0].algebra());
    if (intervals.size() == 1) {
      result = moment(model_.params(w.colors[0]), w.uncolored());
    } else {
      std::vector<Element> centers;
      for (auto [first, last] : intervals) centers.push_back(interval_expectation(w, first, last));
      const std::size_t m = intervals.size();
      for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
        const int size = __builtin_popcountl(mask);
        Element term = expect(replace(w, intervals, centers, mask));
        if (size % 2 == 1) {
          result += term;
        } else {
          result -= term;
        }
      }
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  Element interval_expectation(const ColoredWord& w, std::size_t first, std::size_t last) {
    BWord inner{w.algebra, {}};
    inner.coeffs.push_back(Element::unit(w.algebra));
    for (std::size_t i = first + 1; i <= last; ++i) inner.coeffs.push_back(w.coeffs[i]);
    inner.coeffs.push_back(Element::unit(w.algebra));
    return moment(model_.params(w.colors[first]), inner);
  }

  static ColoredWord replace(const ColoredWord& w, const std::vector<std::pair<std::size_t, std::size_t>>& intervals,
                             const std::vector<Element>& centers, unsigned long mask) {
    ColoredWord out{w.algebra, {w.coeffs[0]}, {}};
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      const auto [first, last] = intervals[j];
      if (mask & (1UL << j)) {
        out.coeffs.back() *= centers[j];
        out.coeffs.back() *= w.coeffs[last + 1];
      } else {
        for (std::size_t i = first; i <= last; ++i) {
          out.colors.push_back(w.colors[i]);
          out.coeffs.push_back(w.coeffs[i + 1]);
        }
      }
    }
    return out;
  }

  static std::string fingerprint(const ColoredWord& w) {
    std::string key;
    for (Color c : w.colors) key.push_back(color_tag(c));
    key.push_back('|');
    for (const Element& e : w.coeffs) {
      const Matrix& m = e.matrix();
      key.append(reinterpret_cast<const char*>(m.data()), sizeof(Complex) * static_cast<std::size_t>(m.size()));
    }
    return key;
  }

  const JointModel& model_;
  std::map<std::string, Element> memo_;
};

}  // namespace

Element joint_moment_free_recursion(const JointModel& model, const ColoredWord& w, std::size_t cap) {
  check_word(model, w, cap);
  return FreenessRecursion(model).expect(w);
}

Element free_convolve_word(const JointModel& model, const BWord& w, std::size_t cap) {
  w.validate();
  const std::size_t d = w.degree();
  if (d > cap) throw DegreeCapExceeded(d, cap);
  Element total = Element::zero(w.coeffs[0].algebra());
  for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
    std::vector<Color> colors(d);
    for (std::size_t i = 0; i < d; ++i) colors[i] = (mask >> i) & 1UL ? Color::red : Color::blue;
    total += joint_moment(model, ColoredWord{w.algebra, w.coeffs, std::move(colors)}, cap);
  }
  return total;
}

MomentTable free_convolve_moments(const JointModel& model, std::size_t degree) {
  model.validate();
  MomentTable table{model.params1.algebra, {}};
  for (BWord& w : standard_words(model.params1.algebra, degree)) {
    Element value = free_convolve_word(model, w);
    table.entries.emplace_back(std::move(w), std::move(value));
  }
  return table;
}

}  // namespace ncfree
