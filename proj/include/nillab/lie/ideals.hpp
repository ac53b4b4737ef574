#pragma once

#include "nillab/lie/subspace.hpp"

#include <vector>

namespace nillab {

/// Span of all brackets [a, b] with a in `left`, b in `right`.
Subspace bracket_space(const Subspace& left, const Subspace& right);

/// [L_1 = L, L_2, ..., {0}] with L_l = [L_{l-1}, L].
std::vector<Subspace> lower_central_series(const Subspace& sub);
std::vector<Subspace> lower_central_series(const AlgebraPtr& algebra);

/// Least ideal of the whole algebra containing `generators`.
Subspace smallest_ideal_containing(const AlgebraPtr& algebra, const std::vector<Vector<ExtScalar>>& generators);
Subspace smallest_ideal_containing(const Subspace& sub);

/// Least subalgebra containing `sub`.
Subspace subalgebra_closure(const Subspace& sub);

/// Least Q-defined subspace containing `sub`, optionally closed to an ideal.
/// Slicing and bracket closure alternate until a joint fixpoint.
Subspace rational_hull(const Subspace& sub, bool close_to_ideal = true);

/// [V, V] for a subalgebra V.
Subspace derived_subalgebra(const Subspace& sub);

/// Center of the algebra (always rational).
Subspace center(const AlgebraPtr& algebra);

/// Intersection of two subspaces of the same algebra.
int intersection_dim(const Subspace& a, const Subspace& b);

}  // namespace nillab
