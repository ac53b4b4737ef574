#pragma once

#include "nillab/group/group.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace nillab {

struct InvalidAutomorphism : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Unipotent Lie-algebra automorphism acting on coordinate columns.
/// A - I is strictly lower triangular, so A fixes each span{xi_j, ..., xi_m}
/// modulo later vectors. With Rational entries it maps the lattice
/// Q-structure to itself; ExtScalar entries arise for Ad of a symbolic point.
template <typename MatScalar>
class BasicAutomorphism {
 public:
  /// Validates shape, unipotency and A[x, y] = [Ax, Ay] on basis pairs.
  BasicAutomorphism(AlgebraPtr algebra, Matrix<MatScalar> matrix);

  static BasicAutomorphism identity(AlgebraPtr algebra) {
    return BasicAutomorphism(algebra, identity_matrix<MatScalar>(algebra->dim()));
  }

  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Matrix<MatScalar>& matrix() const { return matrix_; }
  bool is_identity() const { return identity_; }

  /// Entries as doubles (Rational matrices only).
  const Matrix<double>& numeric_matrix() const { return numeric_; }

  template <typename Scalar>
  Vector<Scalar> apply(const Vector<Scalar>& x) const;

  BasicAutomorphism compose(const BasicAutomorphism& inner) const {
    return BasicAutomorphism(algebra_, matmul(matrix_, inner.matrix_));
  }
  BasicAutomorphism inverse() const;

  friend bool operator==(const BasicAutomorphism& a, const BasicAutomorphism& b) { return a.matrix_ == b.matrix_; }

 private:
  AlgebraPtr algebra_;
  Matrix<MatScalar> matrix_;
  Matrix<double> numeric_;
  bool identity_ = false;
};

using UnipotentAutomorphism = BasicAutomorphism<Rational>;
using ExtAutomorphism = BasicAutomorphism<ExtScalar>;

template <typename MatScalar>
BasicAutomorphism<MatScalar>::BasicAutomorphism(AlgebraPtr algebra, Matrix<MatScalar> matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  const int m = algebra_->dim();
  if (matrix_.rows() != m || matrix_.cols() != m)
    throw InvalidAutomorphism("automorphism must be " + std::to_string(m) + "x" + std::to_string(m));
  identity_ = true;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const MatScalar& e = matrix_(r, c);
      if (r == c && !(e == MatScalar(1))) throw InvalidAutomorphism("automorphism is not unipotent: diagonal entry != 1");
      if (c > r && !is_zero(e)) throw InvalidAutomorphism("automorphism is not unipotent: A - I not strictly lower triangular");
      if (r != c && !is_zero(e)) identity_ = false;
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto ei = unit_vector<MatScalar>(m, i);
      auto ej = unit_vector<MatScalar>(m, j);
      auto lhs = apply<MatScalar>(algebra_->bracket<MatScalar>(ei, ej));
      auto rhs = algebra_->bracket<MatScalar>(apply<MatScalar>(ei), apply<MatScalar>(ej));
      if (!(lhs == rhs))
        throw InvalidAutomorphism("matrix does not preserve the bracket on (xi_" + std::to_string(i + 1) + ", xi_" +
                                  std::to_string(j + 1) + ")");
    }
  if constexpr (std::is_same_v<MatScalar, Rational>) {
    numeric_.resize(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) numeric_(r, c) = matrix_(r, c).to_double();
  }
}

template <typename MatScalar>
BasicAutomorphism<MatScalar> BasicAutomorphism<MatScalar>::inverse() const {
  // (I + N)^-1 = I - N + N^2 - ... with N nilpotent.
  const int m = algebra_->dim();
  Matrix<MatScalar> n = matrix_ - identity_matrix<MatScalar>(m);
  Matrix<MatScalar> result = identity_matrix<MatScalar>(m);
  Matrix<MatScalar> power = identity_matrix<MatScalar>(m);
  for (int k = 1; k < m; ++k) {
    power = matmul(power, n);
    if (k % 2 == 1) result -= power;
    else result += power;
  }
  return BasicAutomorphism(algebra_, result);
}

template <typename MatScalar>
template <typename Scalar>
Vector<Scalar> BasicAutomorphism<MatScalar>::apply(const Vector<Scalar>& x) const {
  if (identity_) return x;
  const int m = algebra_->dim();
  Vector<Scalar> out = zero_vector<Scalar>(m);
  if constexpr (std::is_same_v<Scalar, double>) {
    static_assert(std::is_same_v<MatScalar, Rational>, "numeric action needs a rational matrix");
    for (int r = 0; r < m; ++r)
      for (int c = 0; c <= r; ++c) out[r] += numeric_(r, c) * x[c];
  } else if constexpr (std::is_same_v<MatScalar, Scalar>) {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c <= r; ++c)
        if (!is_zero(matrix_(r, c)) && !is_zero(x[c])) out[r] += matrix_(r, c) * x[c];
  } else {
    for (int r = 0; r < m; ++r)
      for (int c = 0; c <= r; ++c)
        if (!is_zero(matrix_(r, c)) && !is_zero(x[c])) out[r] += from_rational<Scalar>(matrix_(r, c)) * x[c];
  }
  return out;
}

/// A(g) = exp(A log g); multiplicative because A is a Lie automorphism.
template <typename MatScalar, typename Scalar>
GroupElement<Scalar> apply_automorphism(const BasicAutomorphism<MatScalar>& a, const GroupElement<Scalar>& g) {
  const NilLieAlgebra& algebra = *a.algebra_ptr();
  if (a.is_identity()) return g;
  if (algebra.is_abelian()) return {a.template apply<Scalar>(g.coords)};
  return exp<Scalar>(algebra, a.template apply<Scalar>(log<Scalar>(algebra, g)));
}

/// Ad_g = exp(ad_{log g}) as a validated automorphism.
inline ExtAutomorphism inner_automorphism(const AlgebraPtr& algebra, const ExactElement& g) {
  return ExtAutomorphism(algebra, adjoint<ExtScalar>(*algebra, log<ExtScalar>(*algebra, g)));
}

}  // namespace nillab
