#pragma once

#include "nillab/lie/algebra.hpp"
#include "nillab/lie/echelon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nillab {

/// Subspace of a Lie algebra over the fraction field of the symbol ring,
/// stored as a reduced echelon basis. The rationality and ideal flags are
/// computed from the basis, never asserted by callers.
class Subspace {
 public:
  Subspace(AlgebraPtr algebra, std::vector<Vector<ExtScalar>> spanning);
  Subspace(AlgebraPtr algebra, const std::vector<Vector<Rational>>& spanning);

  static Subspace zero(AlgebraPtr algebra);
  static Subspace full(AlgebraPtr algebra);
  /// span{xi_first, ..., xi_m} (0-based first).
  static Subspace trailing(AlgebraPtr algebra, int first);

  const NilLieAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }

  int dim() const { return form_.rank(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == algebra_->dim(); }
  const std::vector<Vector<ExtScalar>>& basis() const { return form_.rows; }
  const std::vector<int>& pivots() const { return form_.pivots; }

  bool is_rational() const { return rational_; }
  bool is_ideal() const { return ideal_; }
  bool is_subalgebra() const { return subalgebra_; }

  /// Basis as rational vectors; throws std::logic_error unless is_rational().
  std::vector<Vector<Rational>> rational_basis() const;

  /// First index j with the subspace equal to span{xi_j, ..., xi_m}, if any.
  std::optional<int> trailing_start() const;

  bool contains(const Vector<ExtScalar>& v) const;
  bool contains(const Vector<Rational>& v) const;
  bool contains(const Subspace& other) const;

  /// Invariance under a linear map given on coordinate columns.
  template <typename Scalar>
  bool is_invariant_under(const Matrix<Scalar>& map) const;

  Subspace operator+(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

  /// One line per basis vector, e.g. "(0, 1/1)".
  std::vector<std::string> basis_strings() const;

 private:
  void compute_flags();

  AlgebraPtr algebra_;
  EchelonForm form_;
  bool rational_ = true;
  bool ideal_ = true;
  bool subalgebra_ = true;
};

template <typename Scalar>
bool Subspace::is_invariant_under(const Matrix<Scalar>& map) const {
  const int m = algebra_->dim();
  for (const auto& b : basis()) {
    Vector<ExtScalar> image = zero_vector<ExtScalar>(m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        if (nillab::is_zero(map(r, c)) || b[c].is_zero()) continue;
        if constexpr (std::is_same_v<Scalar, Rational>) {
          image[r] += b[c] * map(r, c);
        } else {
          image[r] += b[c] * ExtScalar(map(r, c));
        }
      }
    }
    if (!contains(image)) return false;
  }
  return true;
}

std::string vector_string(const Vector<ExtScalar>& v);
std::string vector_string(const Vector<Rational>& v);

}  // namespace nillab
