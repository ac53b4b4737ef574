#pragma once

#include "nillab/exact/eigen_support.hpp"

#include <vector>

namespace nillab {

/// Reduced echelon basis over the fraction field of Q[t_1, ..., t_r].
///
/// Elimination is fraction-free with the leftmost nonzero column as pivot.
/// Each pivot column is zero outside its own row. A row whose entries are
/// rational multiples of its pivot is stored rationally with pivot 1, so a
/// Q-defined subspace always comes out in its unique rational RREF. Other rows
/// are divided by their monomial content and scaled so the pivot's first term
/// has coefficient 1.
struct EchelonForm {
  std::vector<Vector<ExtScalar>> rows;
  std::vector<int> pivots;

  int rank() const { return static_cast<int>(rows.size()); }
};

EchelonForm echelon_form(std::vector<Vector<ExtScalar>> vectors);

/// Eliminates v against the basis in place; returns true when v reduces to 0.
bool reduce_against(const EchelonForm& form, Vector<ExtScalar>& v);

/// True when every entry of every row is rational.
bool is_rational_form(const EchelonForm& form);

/// Basis (rational RREF order) of {x : m * x = 0}.
std::vector<Vector<Rational>> rational_nullspace(const Matrix<Rational>& m);

/// Scales a rational vector to a primitive integer vector with positive
/// leading nonzero entry.
std::vector<BigInt> primitive_integer_vector(const Vector<Rational>& v);

}  // namespace nillab
