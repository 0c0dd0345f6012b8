#pragma once

// Shared evaluator for T_pi / E_pi over a partner array. Blocks are
// replaced left to right: a singleton at relative depth m contributes
// lambda_m, a pair (i, j) contributes alpha_m[b_i ... b_{j-1}] with the
// inner segment evaluated recursively.

#include "ncfree/matrix_algebra.hpp"
#include "ncfree/partitions.hpp"

#include <vector>

namespace ncfree::detail {

// Lambda(Color, int depth) -> const Element&; Alpha(Color, int depth) -> const LinMap&.
template <class Lambda, class Alpha>
class BlockEvaluator {
 public:
  BlockEvaluator(const std::vector<int>& partner, const std::vector<Color>* colors,
                 const std::vector<Element>& coeffs, Lambda lambda, Alpha alpha)
      : partner_(partner), colors_(colors), b_(coeffs), lambda_(lambda), alpha_(alpha) {}

  Element run() { return segment(1, static_cast<int>(partner_.size()) - 1, 1, 1); }

 private:
  Color color(int i) const { return colors_ ? (*colors_)[static_cast<std::size_t>(i)] : Color::blue; }

  // Evaluates b_{l-1} X b_l ... X b_r with the blocks of positions l..r.
  Element segment(int l, int r, int blue_depth, int red_depth) {
    Element acc = b_[static_cast<std::size_t>(l - 1)];
    int i = l;
    while (i <= r) {
      const int j = partner_[static_cast<std::size_t>(i)];
      const Color c = color(i);
      const int depth = c == Color::blue ? blue_depth : red_depth;
      if (j == i) {
        acc *= lambda_(c, depth);
        acc *= b_[static_cast<std::size_t>(i)];
        ++i;
        continue;
      }
      const Element inner = c == Color::blue ? segment(i + 1, j - 1, blue_depth + 1, 1)
                                             : segment(i + 1, j - 1, 1, red_depth + 1);
      acc *= alpha_(c, depth).apply(inner);
      acc *= b_[static_cast<std::size_t>(j)];
      i = j + 1;
    }
    return acc;
  }

  const std::vector<int>& partner_;
  const std::vector<Color>* colors_;
  const std::vector<Element>& b_;
  Lambda lambda_;
  Alpha alpha_;
};

template <class Lambda, class Alpha>
Element evaluate_blocks(const std::vector<int>& partner, const std::vector<Color>* colors,
                        const std::vector<Element>& coeffs, Lambda lambda, Alpha alpha) {
  return BlockEvaluator<Lambda, Alpha>(partner, colors, coeffs, lambda, alpha).run();
}

}  // namespace ncfree::detail
