#pragma once

#include "nillab/exact/eigen_support.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nillab {

struct InvalidAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Nonzero structure constant c with [xi_i, xi_j] containing c * xi_k, i < j.
/// Indices are 0-based.
struct StructureConstant {
  int i;
  int j;
  int k;
  Rational c;
};

/// Finite-dimensional nilpotent Lie algebra over Q in a Mal'cev-adapted basis.
class NilLieAlgebra {
 public:
  struct BracketSpec {
    int i;
    int j;
    std::vector<std::pair<int, Rational>> coeffs;
  };

  /// Validates antisymmetry, the Jacobi identity, adapted triangularity,
  /// nilpotency of the declared step, and that every lower central series
  /// term is spanned by a trailing segment of the basis. Throws InvalidAlgebra.
  /// step = 0 takes the step from the lower central series.
  NilLieAlgebra(int dim, int step, const std::vector<BracketSpec>& brackets);

  static std::shared_ptr<const NilLieAlgebra> abelian(int dim);

  int dim() const { return dim_; }
  int step() const { return step_; }
  bool is_abelian() const { return constants_.empty(); }

  const std::vector<StructureConstant>& constants() const { return constants_; }
  Rational constant(int i, int j, int k) const;
  /// Brackets grouped by (i, j), i < j, for serialization.
  std::vector<BracketSpec> brackets() const;

  /// Dimensions of the lower central series terms g_1 = g, g_2, ..., ending in 0.
  const std::vector<int>& lower_central_dims() const { return lcs_dims_; }

  template <typename Scalar>
  Vector<Scalar> bracket(const Vector<Scalar>& x, const Vector<Scalar>& y) const;

  /// Matrix of ad_x acting on coordinate columns.
  template <typename Scalar>
  Matrix<Scalar> ad(const Vector<Scalar>& x) const;

 private:
  struct NumericConstant {
    int i;
    int j;
    int k;
    double c;
  };

  int dim_;
  int step_;
  std::vector<StructureConstant> constants_;
  std::vector<NumericConstant> numeric_;
  std::vector<int> lcs_dims_;
};

using AlgebraPtr = std::shared_ptr<const NilLieAlgebra>;

template <typename Scalar>
Vector<Scalar> NilLieAlgebra::bracket(const Vector<Scalar>& x, const Vector<Scalar>& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket: dimension mismatch");
  Vector<Scalar> out = zero_vector<Scalar>(dim_);
  if constexpr (std::is_same_v<Scalar, double>) {
    for (const auto& sc : numeric_) out[sc.k] += sc.c * (x[sc.i] * y[sc.j] - x[sc.j] * y[sc.i]);
  } else {
    for (const auto& sc : constants_) {
      bool a = !is_zero(x[sc.i]) && !is_zero(y[sc.j]);
      bool b = !is_zero(x[sc.j]) && !is_zero(y[sc.i]);
      if (!a && !b) continue;
      Scalar term = Scalar(0);
      if (a) term = x[sc.i] * y[sc.j];
      if (b) term -= x[sc.j] * y[sc.i];
      if (is_zero(term)) continue;
      out[sc.k] += from_rational<Scalar>(sc.c) * term;
    }
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> NilLieAlgebra::ad(const Vector<Scalar>& x) const {
  Matrix<Scalar> m(dim_, dim_);
  for (int c = 0; c < dim_; ++c) {
    Vector<Scalar> col = bracket<Scalar>(x, unit_vector<Scalar>(dim_, c));
    for (int r = 0; r < dim_; ++r) m(r, c) = col[r];
  }
  return m;
}

/// Heisenberg algebra [xi_1, xi_2] = xi_3.
AlgebraPtr heisenberg3_algebra();
/// Lie algebra of 4x4 unipotent upper-triangular matrices in the basis
/// (E12, E23, E34, E13, E24, E14).
AlgebraPtr unitriangular4_algebra();

}  // namespace nillab
