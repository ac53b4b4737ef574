#pragma once

#include "nillab/structure/system.hpp"

#include <optional>
#include <vector>

namespace nillab {

/// B = Ad_{g_tau} o A, the derivative of x -> tau x tau^-1.
ExtAutomorphism total_conjugation(const AffineNilsystem& sys, int which = 0);

/// Columns of B - I.
std::vector<Vector<ExtScalar>> conjugation_defect_image(const AffineNilsystem& sys, int which = 0);

/// Lie algebra of [tau, G]: the smallest ideal containing image(B - I).
Subspace tau_commutator_ideal(const AffineNilsystem& sys);

/// J(V, Gamma): the least rational ideal containing V.
Subspace rational_closure_J(const AffineNilsystem& sys, const Subspace& v);

/// Identity component of the Leibman group: J([tau, G], Gamma) plus the
/// rational directions of the induced central translation.
Subspace leibman_identity_component(const AffineNilsystem& sys);

/// Lie algebra of H_{k+1}: l_1 = h_H, l_{j+1} = ideal([l_j, h_H] + (B - I) l_j).
Subspace leibman_lcs(const AffineNilsystem& sys, int k);

/// [H, G] = ideal([h_H, g] + (B - I) g), reported next to J for comparison.
Subspace leibman_commutator_with_g(const AffineNilsystem& sys);

/// Kernel of the discrete-spectrum factor: J([tau, G], Gamma).
Subspace discrete_factor_subgroup(const AffineNilsystem& sys);

struct InvalidFactor : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Factor G/N Gamma. The kernel must be a rational A-invariant ideal of the
/// form span{xi_j, ..., xi_m}; the quotient then keeps the leading j - 1
/// second-kind coordinates, which is exactly the projection.
struct FactorData {
  Subspace kernel;
  int kept;  // number of leading coordinates of the quotient
  std::optional<AffineNilsystem> quotient;  // empty when the quotient is a point

  /// Projection of second-kind coordinates.
  template <typename Scalar>
  Vector<Scalar> project(const Vector<Scalar>& coords) const {
    return coords.head(kept);
  }
};

FactorData quotient_system(const AffineNilsystem& sys, const Subspace& kernel);

struct ErgodicityVerdict {
  bool ergodic;
  /// Frequency of a T-invariant character of the maximal torus factor when
  /// nonergodic: primitive k in ker((A - I)^t) times the denominator of the
  /// rational constant <k, g_tau>.
  std::vector<BigInt> witness;
};

ErgodicityVerdict ergodicity_test(const AffineNilsystem& sys);

}  // namespace nillab
