#include "nillab/lie/algebra.hpp"

#include "nillab/lie/echelon.hpp"

#include <algorithm>
#include <map>

namespace nillab {

namespace {

std::string pair_name(int i, int j) {
  return "[xi_" + std::to_string(i + 1) + ", xi_" + std::to_string(j + 1) + "]";
}

}  // namespace

NilLieAlgebra::NilLieAlgebra(int dim, int step, const std::vector<BracketSpec>& brackets)
    : dim_(dim), step_(step) {
  if (dim < 1 || dim > kMaxDim) throw InvalidAlgebra("algebra dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  if (step < 0) throw InvalidAlgebra("step must be positive");

  std::map<std::pair<int, int>, std::map<int, Rational>> table;
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= dim || b.j >= dim) throw InvalidAlgebra("bracket index out of range");
    if (b.i == b.j) {
      for (const auto& [k, c] : b.coeffs)
        if (!c.is_zero()) throw InvalidAlgebra("antisymmetry violated: " + pair_name(b.i, b.j) + " != 0");
      continue;
    }
    const bool swapped = b.i > b.j;
    const int i = std::min(b.i, b.j);
    const int j = std::max(b.i, b.j);
    std::map<int, Rational> coeffs;
    for (const auto& [k, c] : b.coeffs) {
      if (k < 0 || k >= dim) throw InvalidAlgebra("bracket target index out of range");
      if (c.is_zero()) continue;
      coeffs[k] += swapped ? -c : c;
    }
    auto [it, inserted] = table.emplace(std::make_pair(i, j), coeffs);
    if (!inserted && it->second != coeffs)
      throw InvalidAlgebra("antisymmetry violated: inconsistent entries for " + pair_name(i, j));
  }
  for (const auto& [ij, coeffs] : table) {
    for (const auto& [k, c] : coeffs) {
      if (c.is_zero()) continue;
      if (k <= ij.second)
        throw InvalidAlgebra("basis not adapted: " + pair_name(ij.first, ij.second) + " has a component on xi_" +
                             std::to_string(k + 1));
      constants_.push_back({ij.first, ij.second, k, c});
      numeric_.push_back({ij.first, ij.second, k, c.to_double()});
    }
  }

  // Jacobi identity on basis triples.
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      for (int c = b + 1; c < dim; ++c) {
        auto ea = unit_vector<Rational>(dim, a);
        auto eb = unit_vector<Rational>(dim, b);
        auto ec = unit_vector<Rational>(dim, c);
        Vector<Rational> sum = bracket<Rational>(ea, bracket<Rational>(eb, ec));
        sum += bracket<Rational>(eb, bracket<Rational>(ec, ea));
        sum += bracket<Rational>(ec, bracket<Rational>(ea, eb));
        if (!is_zero_vector(sum))
          throw InvalidAlgebra("Jacobi identity fails on (xi_" + std::to_string(a + 1) + ", xi_" +
                               std::to_string(b + 1) + ", xi_" + std::to_string(c + 1) + ")");
      }
    }
  }

  // Lower central series: g_{l+1} = [g_l, g].
  std::vector<Vector<ExtScalar>> current;
  for (int i = 0; i < dim; ++i) current.push_back(unit_vector<ExtScalar>(dim, i));
  EchelonForm form = echelon_form(current);
  lcs_dims_.push_back(form.rank());
  while (form.rank() > 0) {
    std::vector<Vector<ExtScalar>> next;
    for (const auto& row : form.rows) {
      for (int i = 0; i < dim; ++i) {
        auto br = bracket<ExtScalar>(row, unit_vector<ExtScalar>(dim, i));
        if (!is_zero_vector(br)) next.push_back(br);
      }
    }
    EchelonForm next_form = echelon_form(next);
    if (next_form.rank() >= form.rank()) throw InvalidAlgebra("algebra is not nilpotent");
    // Mal'cev adaptedness: each term is spanned by the last basis vectors.
    const int start = dim - next_form.rank();
    for (int r = 0; r < next_form.rank(); ++r) {
      if (next_form.pivots[r] != start + r || !is_zero_vector(Vector<ExtScalar>(
                                                   next_form.rows[r] - unit_vector<ExtScalar>(dim, start + r)))) {
        throw InvalidAlgebra("basis not adapted: lower central series term " +
                             std::to_string(lcs_dims_.size() + 1) + " is not spanned by trailing basis vectors");
      }
    }
    form = std::move(next_form);
    lcs_dims_.push_back(form.rank());
  }
  const int actual_step = static_cast<int>(lcs_dims_.size()) - 1;
  if (step == 0) step_ = std::max(actual_step, 1);
  else if (actual_step != step && !(actual_step == 0 && step == 1))
    throw InvalidAlgebra("declared step " + std::to_string(step) + " but the algebra is " +
                         std::to_string(actual_step) + "-step nilpotent");
}

std::shared_ptr<const NilLieAlgebra> NilLieAlgebra::abelian(int dim) {
  return std::make_shared<const NilLieAlgebra>(dim, 1, std::vector<BracketSpec>{});
}

Rational NilLieAlgebra::constant(int i, int j, int k) const {
  Rational sign(1);
  if (i > j) {
    std::swap(i, j);
    sign = Rational(-1);
  }
  for (const auto& sc : constants_)
    if (sc.i == i && sc.j == j && sc.k == k) return sign * sc.c;
  return Rational(0);
}

std::vector<NilLieAlgebra::BracketSpec> NilLieAlgebra::brackets() const {
  std::vector<BracketSpec> out;
  for (const auto& sc : constants_) {
    if (out.empty() || out.back().i != sc.i || out.back().j != sc.j) out.push_back({sc.i, sc.j, {}});
    out.back().coeffs.emplace_back(sc.k, sc.c);
  }
  return out;
}

AlgebraPtr heisenberg3_algebra() {
  return std::make_shared<const NilLieAlgebra>(3, 2, std::vector<NilLieAlgebra::BracketSpec>{{0, 1, {{2, Rational(1)}}}});
}

AlgebraPtr unitriangular4_algebra() {
  // xi_1 = E12, xi_2 = E23, xi_3 = E34, xi_4 = E13, xi_5 = E24, xi_6 = E14.
  return std::make_shared<const NilLieAlgebra>(
      6, 3,
      std::vector<NilLieAlgebra::BracketSpec>{
          {0, 1, {{3, Rational(1)}}},    // [E12, E23] = E13
          {1, 2, {{4, Rational(1)}}},    // [E23, E34] = E24
          {0, 4, {{5, Rational(1)}}},    // [E12, E24] = E14
          {2, 3, {{5, Rational(-1)}}},   // [E34, E13] = -E14
      });
}

}  // namespace nillab
