#include "ncfree/errors.hpp"
#include "ncfree/joint.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace ncfree {

namespace {

std::string unit_name(const Element& e) {
  for (int j = 0; j < e.dim(); ++j) {
    for (int i = 0; i < e.dim(); ++i) {
      if (e(i, j) != Complex(0.0)) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
    }
  }
  return "0";
}

// Coordinates of an element against basis(a): diagonal entries for D_d, all
// entries column-major for M_d.
std::vector<std::pair<int, int>> coordinates(Algebra a) {
  std::vector<std::pair<int, int>> out;
  for (const Element& e : basis(a)) {
    for (int j = 0; j < a.dim; ++j) {
      for (int i = 0; i < a.dim; ++i) {
        if (e(i, j) != Complex(0.0)) out.emplace_back(i, j);
      }
    }
  }
  return out;
}

const Element& lookup(const MomentTable& table, const BWord& w) {
  const Element* value = table.find(w);
  if (value == nullptr) {
    std::string shape = "degree " + std::to_string(w.degree()) + " word (";
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) shape += (i ? "," : "") + unit_name(w.coeffs[i]);
    throw std::invalid_argument("moment table lacks the " + shape + ")");
  }
  return *value;
}

BWord make_word(Algebra a, const std::vector<Element>& inner) {
  BWord w{a, {Element::unit(a)}};
  w.coeffs.insert(w.coeffs.end(), inner.begin(), inner.end());
  w.coeffs.push_back(Element::unit(a));
  return w;
}

// Dense map sending basis element k to images[k]; other matrix units go to 0.
LinMap map_from_images(Algebra a, const std::vector<Element>& images) {
  const int d = a.dim;
  Matrix dense = Matrix::Zero(d * d, d * d);
  const auto coords = coordinates(a);
  for (std::size_t k = 0; k < images.size(); ++k) {
    const auto [i, j] = coords[k];
    dense.col(j * d + i) = Eigen::Map<const Eigen::VectorXcd>(images[k].matrix().data(), d * d);
  }
  return LinMap::dense(a, std::move(dense));
}

int rank_of(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

}  // namespace

std::vector<BWord> consistency_words(Algebra a) {
  const auto units = basis(a);
  std::vector<BWord> out;
  out.push_back(make_word(a, {}));  // degree 1: (1, 1)
  for (const Element& e : units) out.push_back(make_word(a, {e}));
  for (const Element& e1 : units) {
    for (const Element& e2 : units) out.push_back(make_word(a, {e1, e2}));
  }
  for (const Element& e1 : units) {
    for (const Element& e2 : units) {
      for (const Element& e3 : units) out.push_back(make_word(a, {e1, e2, e3}));
    }
  }
  return out;
}

ConsistencyResult verify_jacobi_consistency(const MomentTable& moments, Algebra algebra) {
  const auto units = basis(algebra);
  const auto coords = coordinates(algebra);
  const auto nb = static_cast<Eigen::Index>(units.size());

  double scale = 1.0;
  for (const auto& [word, value] : moments.entries) scale = std::max(scale, value.matrix().cwiseAbs().maxCoeff());
  for (const auto& [word, value] : moments.entries) {
    if (word.degree() % 2 == 1 && !value.is_zero(kRelTol * scale)) {
      throw DomainError("moment table is not symmetric: an odd-degree moment is nonzero");
    }
  }
  lookup(moments, make_word(algebra, {}));

  std::vector<Element> beta1_images;
  for (const Element& e : units) beta1_images.push_back(lookup(moments, make_word(algebra, {e})));
  const LinMap beta1 = map_from_images(algebra, beta1_images);

  // unknown c(k, j): coordinate k of beta_2(units[j]); column index k + nb*j
  std::vector<LinearConstraint> rows;
  std::vector<std::size_t> row_tuple;
  for (std::size_t i1 = 0; i1 < units.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < units.size(); ++i2) {
      for (std::size_t i3 = 0; i3 < units.size(); ++i3) {
        const Element& b1 = units[i1];
        const Element& b2 = units[i2];
        const Element& b3 = units[i3];
        const Element lhs =
            lookup(moments, make_word(algebra, {b1, b2, b3})) - beta1.apply(b1) * b2 * beta1.apply(b3);
        std::vector<Element> sandwich;
        for (const Element& ek : units) sandwich.push_back(beta1.apply(b1 * ek * b3));
        const std::string tuple = "(" + unit_name(b1) + "," + unit_name(b2) + "," + unit_name(b3) + ")";
        for (const auto& [r, s] : coords) {
          LinearConstraint row;
          row.tuple = tuple;
          row.entry = "(" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")";
          row.coefficients.assign(static_cast<std::size_t>(nb * nb), Complex(0.0));
          for (Eigen::Index k = 0; k < nb; ++k) {
            row.coefficients[static_cast<std::size_t>(k + nb * static_cast<Eigen::Index>(i2))] =
                sandwich[static_cast<std::size_t>(k)](r, s);
          }
          row.rhs = lhs(r, s);
          rows.push_back(std::move(row));
          row_tuple.push_back((i1 * units.size() + i2) * units.size() + i3);
        }
      }
    }
  }

  const auto nrows = static_cast<Eigen::Index>(rows.size());
  Matrix a(nrows, nb * nb);
  Eigen::VectorXcd y(nrows);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    for (Eigen::Index c = 0; c < nb * nb; ++c) a(r, c) = rows[static_cast<std::size_t>(r)].coefficients[static_cast<std::size_t>(c)];
    y(r) = rows[static_cast<std::size_t>(r)].rhs;
  }
  const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(y);
  const double residual = (a * x - y).cwiseAbs().maxCoeff();
  const double tol = kRelTol * std::max(1.0, y.cwiseAbs().maxCoeff());

  ConsistencyResult result;
  if (residual <= tol) {
    std::vector<Element> beta2_images;
    for (Eigen::Index j = 0; j < nb; ++j) {
      Element image = Element::zero(algebra);
      for (Eigen::Index k = 0; k < nb; ++k) image += x(k + nb * j) * units[static_cast<std::size_t>(k)];
      beta2_images.push_back(image);
    }
    JacobiParams p;
    p.algebra = algebra;
    p.head_lambda = {Element::zero(algebra)};
    p.head_alpha = {beta1};
    p.tail_lambda = Element::zero(algebra);
    p.tail_alpha = map_from_images(algebra, beta2_images);
    result.params = std::move(p);
    return result;
  }

  ConsistencyWitness witness;
  witness.residual = residual;
  for (Eigen::Index j = 0; j < nb; ++j) {
    for (Eigen::Index k = 0; k < nb; ++k) {
      const auto [r, s] = coords[static_cast<std::size_t>(k)];
      witness.unknowns.push_back("beta2(" + unit_name(units[static_cast<std::size_t>(j)]) + ")_" +
                                 std::to_string(r + 1) + std::to_string(s + 1));
    }
  }
  auto inconsistent = [&](const std::vector<Eigen::Index>& pick) {
    Matrix sub(static_cast<Eigen::Index>(pick.size()), nb * nb);
    Matrix aug(static_cast<Eigen::Index>(pick.size()), nb * nb + 1);
    for (std::size_t t = 0; t < pick.size(); ++t) {
      sub.row(static_cast<Eigen::Index>(t)) = a.row(pick[t]);
      aug.row(static_cast<Eigen::Index>(t)) << a.row(pick[t]), y(pick[t]);
    }
    return rank_of(sub, tol) < rank_of(aug, tol);
  };
  // smallest certificate first: one row, then two rows of a tuple, then any two
  for (Eigen::Index r = 0; r < nrows && witness.constraints.empty(); ++r) {
    if (inconsistent({r})) witness.constraints = {rows[static_cast<std::size_t>(r)]};
  }
  for (int pass = 0; pass < 2 && witness.constraints.empty(); ++pass) {
    for (Eigen::Index r = 0; r < nrows && witness.constraints.empty(); ++r) {
      for (Eigen::Index s = r + 1; s < nrows; ++s) {
        if (pass == 0 && row_tuple[static_cast<std::size_t>(r)] != row_tuple[static_cast<std::size_t>(s)]) continue;
        if (inconsistent({r, s})) {
          witness.constraints = {rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(s)]};
          break;
        }
      }
    }
  }
  result.witness = std::move(witness);
  return result;
}

}  // namespace ncfree
