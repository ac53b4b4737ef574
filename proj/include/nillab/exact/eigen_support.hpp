#pragma once

#include "nillab/exact/ext_scalar.hpp"
#include "nillab/exact/rational.hpp"

#include <Eigen/Core>

#include <cmath>

namespace Eigen {

template <>
struct NumTraits<nillab::Rational> : GenericNumTraits<nillab::Rational> {
  using Real = nillab::Rational;
  using NonInteger = nillab::Rational;
  using Nested = nillab::Rational;
  using Literal = nillab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<nillab::ExtScalar> : GenericNumTraits<nillab::ExtScalar> {
  using Real = nillab::ExtScalar;
  using NonInteger = nillab::ExtScalar;
  using Nested = nillab::ExtScalar;
  using Literal = nillab::ExtScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace nillab {

/// Largest supported algebra dimension. Vectors live on the stack.
inline constexpr int kMaxDim = 16;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Embedding of the exact rationals into each supported scalar type.
template <typename Scalar>
Scalar from_rational(const Rational& r);

template <>
inline Rational from_rational<Rational>(const Rational& r) { return r; }
template <>
inline ExtScalar from_rational<ExtScalar>(const Rational& r) { return ExtScalar(r); }
template <>
inline double from_rational<double>(const Rational& r) { return r.to_double(); }

template <typename Scalar>
Vector<Scalar> zero_vector(int dim) {
  Vector<Scalar> v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Scalar(0);
  return v;
}

template <typename Scalar>
Vector<Scalar> unit_vector(int dim, int i) {
  Vector<Scalar> v = zero_vector<Scalar>(dim);
  v[i] = Scalar(1);
  return v;
}

template <typename Scalar>
bool is_zero_vector(const Vector<Scalar>& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

template <typename To, typename From>
Vector<To> convert(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<From, Rational>) {
      out[i] = from_rational<To>(v[i]);
    } else {
      out[i] = To(v[i]);
    }
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> identity_matrix(int dim) {
  Matrix<Scalar> m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Scalar(r == c ? 1 : 0);
  return m;
}

/// Dense product that skips structural zeros (cheap for exact scalars).
template <typename Scalar>
Matrix<Scalar> matmul(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out(r, c) = Scalar(0);
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      if (is_zero(a(r, k))) continue;
      for (int c = 0; c < b.cols(); ++c)
        if (!is_zero(b(k, c))) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

/// Matrix-vector product that skips structural zeros.
template <typename Scalar>
Vector<Scalar> matvec(const Matrix<Scalar>& a, const Vector<Scalar>& v) {
  Vector<Scalar> out = zero_vector<Scalar>(static_cast<int>(a.rows()));
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k)
      if (!is_zero(a(r, k)) && !is_zero(v[k])) out[r] += a(r, k) * v[k];
  return out;
}

/// Numeric value of an exact vector under a symbol assignment (by index).
inline Vector<double> evaluate(const Vector<ExtScalar>& v, std::span<const double> values) {
  Vector<double> out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = evaluate(v[i], values);
  return out;
}

}  // namespace nillab
