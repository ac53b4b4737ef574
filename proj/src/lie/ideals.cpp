#include "nillab/lie/ideals.hpp"

namespace nillab {

Subspace bracket_space(const Subspace& left, const Subspace& right) {
  std::vector<Vector<ExtScalar>> vs;
  for (const auto& a : left.basis())
    for (const auto& b : right.basis()) {
      auto br = left.algebra().bracket<ExtScalar>(a, b);
      if (!is_zero_vector(br)) vs.push_back(std::move(br));
    }
  return Subspace(left.algebra_ptr(), std::move(vs));
}

std::vector<Subspace> lower_central_series(const Subspace& sub) {
  std::vector<Subspace> series{sub};
  while (!series.back().is_zero()) {
    Subspace next = bracket_space(series.back(), sub);
    if (next.dim() >= series.back().dim()) {
      // Only possible for non-nilpotent input; validated algebras never get here.
      throw std::logic_error("lower central series does not descend");
    }
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<Subspace> lower_central_series(const AlgebraPtr& algebra) {
  return lower_central_series(Subspace::full(algebra));
}

Subspace smallest_ideal_containing(const AlgebraPtr& algebra, const std::vector<Vector<ExtScalar>>& generators) {
  Subspace current(algebra, generators);
  const Subspace whole = Subspace::full(algebra);
  // Each round adds one more level of brackets; nilpotency bounds the rounds.
  for (int round = 0; round <= algebra->step(); ++round) {
    if (current.is_ideal()) return current;
    current = current + bracket_space(current, whole);
  }
  return current;
}

Subspace smallest_ideal_containing(const Subspace& sub) {
  return smallest_ideal_containing(sub.algebra_ptr(), sub.basis());
}

Subspace subalgebra_closure(const Subspace& sub) {
  Subspace current = sub;
  for (int round = 0; round <= sub.algebra().step(); ++round) {
    if (current.is_subalgebra()) return current;
    current = current + bracket_space(current, current);
  }
  return current;
}

Subspace rational_hull(const Subspace& sub, bool close_to_ideal) {
  Subspace current = sub;
  for (int round = 0; round <= sub.algebra().dim(); ++round) {
    std::vector<Vector<Rational>> slices;
    for (const auto& b : current.basis()) {
      for (auto& slice : rational_slices(std::span<const ExtScalar>(b.data(), b.size()))) {
        Vector<Rational> v(b.size());
        for (int i = 0; i < b.size(); ++i) v[i] = slice[i];
        slices.push_back(v);
      }
    }
    Subspace next(sub.algebra_ptr(), slices);
    if (close_to_ideal) next = smallest_ideal_containing(next);
    if (next.dim() == current.dim() && current.is_rational()) return next;
    current = std::move(next);
  }
  return current;
}

Subspace derived_subalgebra(const Subspace& sub) {
  return subalgebra_closure(bracket_space(sub, sub));
}

Subspace center(const AlgebraPtr& algebra) {
  const int m = algebra->dim();
  // z is central iff sum_i z_i c[i][j][k] = 0 for all j, k.
  Matrix<Rational> sys(m * m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i) sys(j * m + k, i) = algebra->constant(i, j, k);
  return Subspace(algebra, rational_nullspace(sys));
}

int intersection_dim(const Subspace& a, const Subspace& b) {
  return a.dim() + b.dim() - (a + b).dim();
}

}  // namespace nillab
