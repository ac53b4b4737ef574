#pragma once

#include "nillab/group/bch.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nillab {

/// Point of G in second-kind Mal'cev coordinates,
/// psi(t) = exp(t_1 xi_1) exp(t_2 xi_2) ... exp(t_m xi_m).
/// Scalar = ExtScalar (exact structure layer) or double (dynamics layer).
template <typename Scalar>
struct GroupElement {
  Vector<Scalar> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
};

using ExactElement = GroupElement<ExtScalar>;
using NumericElement = GroupElement<double>;

template <typename Scalar>
GroupElement<Scalar> identity_element(const NilLieAlgebra& algebra) {
  return {zero_vector<Scalar>(algebra.dim())};
}

/// log(psi(t_first ... t_m)) using only coordinates from index `first` on.
template <typename Scalar>
Vector<Scalar> second_to_first(const NilLieAlgebra& algebra, const Vector<Scalar>& t, int first = 0) {
  const int m = algebra.dim();
  Vector<Scalar> w = zero_vector<Scalar>(m);
  bool started = false;
  for (int i = first; i < m; ++i) {
    if (is_zero(t[i])) continue;
    Vector<Scalar> step = zero_vector<Scalar>(m);
    step[i] = t[i];
    if (!started) {
      w = step;
      started = true;
    } else {
      w = bch<Scalar>(algebra, w, step);
    }
  }
  return w;
}

/// Second-kind coordinates of exp(w), by peeling t_i = w_i and recursing on
/// bch(-t_i xi_i, w). Coordinates before `first` must be zero in w.
template <typename Scalar>
Vector<Scalar> first_to_second(const NilLieAlgebra& algebra, const Vector<Scalar>& w, int first = 0) {
  const int m = algebra.dim();
  Vector<Scalar> t = zero_vector<Scalar>(m);
  Vector<Scalar> rest = w;
  for (int i = first; i < m; ++i) {
    if (is_zero(rest[i])) continue;
    t[i] = rest[i];
    if (i + 1 == m) break;
    Vector<Scalar> peel = zero_vector<Scalar>(m);
    peel[i] = -t[i];
    rest = bch<Scalar>(algebra, peel, rest);
  }
  return t;
}

template <typename Scalar>
Vector<Scalar> log(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g) {
  return second_to_first<Scalar>(algebra, g.coords);
}

template <typename Scalar>
GroupElement<Scalar> exp(const NilLieAlgebra& algebra, const Vector<Scalar>& w) {
  return {first_to_second<Scalar>(algebra, w)};
}

template <typename Scalar>
GroupElement<Scalar> multiply(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g, const GroupElement<Scalar>& h) {
  if (g.coords.size() != algebra.dim() || h.coords.size() != algebra.dim())
    throw std::invalid_argument("multiply: dimension mismatch");
  if (algebra.is_abelian()) return {g.coords + h.coords};
  return exp<Scalar>(algebra, bch<Scalar>(algebra, log<Scalar>(algebra, g), log<Scalar>(algebra, h)));
}

template <typename Scalar>
GroupElement<Scalar> inverse(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g) {
  if (algebra.is_abelian()) return {-g.coords};
  return exp<Scalar>(algebra, Vector<Scalar>(-log<Scalar>(algebra, g)));
}

/// [g, h] = g h g^-1 h^-1.
template <typename Scalar>
GroupElement<Scalar> commutator(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g, const GroupElement<Scalar>& h) {
  auto gh = multiply(algebra, g, h);
  auto ghg = multiply(algebra, gh, inverse(algebra, g));
  return multiply(algebra, ghg, inverse(algebra, h));
}

/// g * exp(c xi_i). Coordinates before i are unchanged.
template <typename Scalar>
GroupElement<Scalar> right_multiply_basis(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g, int i,
                                          const Scalar& c) {
  GroupElement<Scalar> out = g;
  if (algebra.is_abelian()) {
    out.coords[i] += c;
    return out;
  }
  // psi(t) = psi(t_<i, 0) psi(0, t_>=i) and the tail lives in the normal
  // subgroup exp(span{xi_i, ..., xi_m}).
  Vector<Scalar> tail = zero_vector<Scalar>(algebra.dim());
  for (int k = i; k < algebra.dim(); ++k) tail[k] = g.coords[k];
  Vector<Scalar> step = zero_vector<Scalar>(algebra.dim());
  step[i] = c;
  Vector<Scalar> prod = bch<Scalar>(algebra, second_to_first<Scalar>(algebra, tail, i), step);
  Vector<Scalar> new_tail = first_to_second<Scalar>(algebra, prod, i);
  for (int k = i; k < algebra.dim(); ++k) out.coords[k] = new_tail[k];
  return out;
}

struct NotReducible : std::domain_error {
  NotReducible() : std::domain_error("cannot reduce symbolic coordinates modulo the lattice") {}
};

/// Result of lattice reduction: g = rep * psi(lattice) with rep in [0,1)^m.
template <typename Scalar>
struct ReducedPoint {
  GroupElement<Scalar> rep;
  std::vector<BigInt> lattice;
};

namespace detail {

inline BigInt floor_of(const double& v) { return BigInt(static_cast<long long>(std::floor(v))); }
inline BigInt floor_of(const ExtScalar& v) {
  auto r = v.as_rational();
  if (!r) throw NotReducible();
  return r->floor();
}
inline bool in_unit_interval(const double& v) { return v >= 0.0 && v < 1.0; }
inline bool in_unit_interval(const ExtScalar& v) {
  auto r = v.as_rational();
  if (!r) throw NotReducible();
  return r->sign() >= 0 && *r < Rational(1);
}
template <typename Scalar>
Scalar to_scalar(const BigInt& n) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return n.convert_to<double>();
  } else {
    return Scalar(Rational(n));
  }
}

}  // namespace detail

/// Representative in [0,1)^m of g Gamma, computed by right-multiplying
/// psi(0, ..., -floor(t_i), ..., 0) for i = 1..m in ascending order.
template <typename Scalar>
ReducedPoint<Scalar> reduce_mod_lattice(const NilLieAlgebra& algebra, const GroupElement<Scalar>& g) {
  const int m = algebra.dim();
  GroupElement<Scalar> rep = g;
  GroupElement<Scalar> gamma = identity_element<Scalar>(algebra);
  for (int i = 0; i < m; ++i) {
    for (int attempt = 0; attempt < 3 && !detail::in_unit_interval(rep.coords[i]); ++attempt) {
      BigInt n = detail::floor_of(rep.coords[i]);
      if constexpr (std::is_same_v<Scalar, double>) {
        if (n == 0) n = rep.coords[i] >= 1.0 ? BigInt(1) : BigInt(-1);  // rounding at the boundary
      }
      Scalar shift = detail::to_scalar<Scalar>(BigInt(-n));
      rep = right_multiply_basis(algebra, rep, i, shift);
      gamma = right_multiply_basis(algebra, gamma, i, shift);
    }
    if constexpr (std::is_same_v<Scalar, double>) {
      if (!detail::in_unit_interval(rep.coords[i])) rep.coords[i] = 0.0;
    }
  }
  ReducedPoint<Scalar> out{rep, {}};
  auto lat = inverse(algebra, gamma);
  for (int i = 0; i < m; ++i) out.lattice.push_back(detail::floor_of(lat.coords[i]));
  return out;
}

/// In-place numeric reduction without tracking the lattice part.
inline void reduce_in_place(const NilLieAlgebra& algebra, Vector<double>& t) {
  const int m = algebra.dim();
  if (algebra.is_abelian()) {
    for (int i = 0; i < m; ++i) {
      t[i] -= std::floor(t[i]);
      if (t[i] >= 1.0) t[i] = 0.0;
    }
    return;
  }
  GroupElement<double> g{t};
  for (int i = 0; i < m; ++i) {
    for (int attempt = 0; attempt < 3 && !(g.coords[i] >= 0.0 && g.coords[i] < 1.0); ++attempt) {
      double n = std::floor(g.coords[i]);
      if (n == 0.0) n = g.coords[i] >= 1.0 ? 1.0 : -1.0;
      g = right_multiply_basis(algebra, g, i, -n);
    }
    if (!(g.coords[i] >= 0.0 && g.coords[i] < 1.0)) g.coords[i] = 0.0;
  }
  t = g.coords;
}

/// Ad_{exp(w)} = exp(ad_w), a finite sum for nilpotent algebras.
template <typename Scalar>
Matrix<Scalar> adjoint(const NilLieAlgebra& algebra, const Vector<Scalar>& w) {
  const int m = algebra.dim();
  const Matrix<Scalar> ad = algebra.ad<Scalar>(w);
  Matrix<Scalar> result = identity_matrix<Scalar>(m);
  Matrix<Scalar> power = identity_matrix<Scalar>(m);
  Rational factorial(1);
  for (int k = 1; k <= algebra.step(); ++k) {
    power = matmul(power, ad);
    factorial *= Rational(k);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (!is_zero(power(r, c))) result(r, c) += power(r, c) * from_rational<Scalar>(Rational(1) / factorial);
  }
  return result;
}

}  // namespace nillab
