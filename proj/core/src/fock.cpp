#include "ncfree/errors.hpp"
#include "ncfree/jacobi.hpp"

#include <vector>

namespace ncfree {

namespace {

// A vector c_0 X c_1 X ... X c_m of the Fock space, degree m. Coefficient c_0
// is the innermost (most recently created) slot.
using Tensor = std::vector<Element>;

}  // namespace

Element fock_moment(const JacobiParams& params, const BWord& w, std::size_t cap) {
  w.validate();
  if (w.algebra.dim != params.algebra.dim) throw AlgebraMismatch("word and parameters live in different algebras");
  if (w.degree() > cap) throw DegreeCapExceeded(w.degree(), cap);

  const std::size_t n = w.degree();
  std::vector<Tensor> terms{Tensor{w.coeffs[n]}};
  // apply x = a* + p + a right to left, then the coefficient b_{i-1}
  for (std::size_t i = n; i >= 1; --i) {
    const std::size_t remaining = i - 1;  // x applications still to come
    std::vector<Tensor> next;
    for (const Tensor& t : terms) {
      const std::size_t m = t.size() - 1;
      if (m + 1 <= remaining) {
        Tensor created;
        created.reserve(t.size() + 1);
        created.push_back(Element::unit(w.algebra));
        created.insert(created.end(), t.begin(), t.end());
        next.push_back(std::move(created));
      }
      if (m <= remaining) {
        Tensor kept = t;
        kept[0] = params.lambda(m + 1) * kept[0];
        next.push_back(std::move(kept));
      }
      if (m >= 1) {
        Tensor annihilated(t.begin() + 1, t.end());
        annihilated[0] = params.alpha(m).apply(t[0]) * annihilated[0];
        next.push_back(std::move(annihilated));
      }
    }
    for (Tensor& t : next) t[0] = w.coeffs[i - 1] * t[0];
    terms = std::move(next);
  }

  Element total = Element::zero(w.coeffs[0].algebra());
  for (const Tensor& t : terms) {
    if (t.size() == 1) total += t[0];
  }
  return total;
}

}  // namespace ncfree
