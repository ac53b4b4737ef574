#include "nillab/structure/structure.hpp"

#include "nillab/lie/ideals.hpp"

namespace nillab {

namespace {

// Rational coefficient vectors of the nonconstant monomials of v.
std::vector<Vector<Rational>> nonconstant_slices(const Vector<ExtScalar>& v) {
  std::map<ExtScalar::Monomial, Vector<Rational>> slices;
  for (int i = 0; i < v.size(); ++i)
    for (const auto& [mono, coeff] : v[i].terms()) {
      if (mono.empty()) continue;
      auto [it, inserted] = slices.try_emplace(mono, zero_vector<Rational>(static_cast<int>(v.size())));
      it->second[i] = coeff;
    }
  std::vector<Vector<Rational>> out;
  for (auto& [mono, slice] : slices) out.push_back(std::move(slice));
  return out;
}

std::vector<Vector<ExtScalar>> apply_defect(const ExtAutomorphism& b, const Subspace& sub) {
  std::vector<Vector<ExtScalar>> out;
  for (const auto& v : sub.basis()) {
    Vector<ExtScalar> img = b.apply<ExtScalar>(v) - v;
    if (!is_zero_vector(img)) out.push_back(std::move(img));
  }
  return out;
}

}  // namespace

ExtAutomorphism total_conjugation(const AffineNilsystem& sys, int which) {
  const auto& gen = sys.generator(which);
  const NilLieAlgebra& alg = sys.algebra();
  Matrix<ExtScalar> ad = adjoint<ExtScalar>(alg, log<ExtScalar>(alg, gen.translation));
  Matrix<ExtScalar> a(alg.dim(), alg.dim());
  for (int r = 0; r < alg.dim(); ++r)
    for (int c = 0; c < alg.dim(); ++c) a(r, c) = ExtScalar(gen.automorphism.matrix()(r, c));
  return ExtAutomorphism(sys.algebra_ptr(), matmul(ad, a));
}

std::vector<Vector<ExtScalar>> conjugation_defect_image(const AffineNilsystem& sys, int which) {
  return apply_defect(total_conjugation(sys, which), Subspace::full(sys.algebra_ptr()));
}

Subspace tau_commutator_ideal(const AffineNilsystem& sys) {
  return smallest_ideal_containing(sys.algebra_ptr(), conjugation_defect_image(sys));
}

Subspace rational_closure_J(const AffineNilsystem& sys, const Subspace& v) {
  if (v.algebra().dim() != sys.dim()) throw std::invalid_argument("subspace belongs to a different algebra");
  return rational_hull(v, true);
}

Subspace discrete_factor_subgroup(const AffineNilsystem& sys) {
  return rational_closure_J(sys, tau_commutator_ideal(sys));
}

Subspace leibman_identity_component(const AffineNilsystem& sys) {
  Subspace h0 = discrete_factor_subgroup(sys);
  // Modulo h0 the map is the translation by the image of g_tau; its orbit
  // closure is carried by the smallest rational subspace W with
  // log(g_tau) in W + Q^m, spanned by the nonconstant monomial slices.
  Vector<ExtScalar> w = log<ExtScalar>(sys.algebra(), sys.translation());
  Subspace directions(sys.algebra_ptr(), nonconstant_slices(w));
  return rational_hull(h0 + directions, true);
}

Subspace leibman_lcs(const AffineNilsystem& sys, int k) {
  if (k < 0) throw std::invalid_argument("leibman_lcs: k must be nonnegative");
  const Subspace h = leibman_identity_component(sys);
  const ExtAutomorphism b = total_conjugation(sys);
  Subspace current = h;
  for (int level = 0; level < k && !current.is_zero(); ++level) {
    std::vector<Vector<ExtScalar>> gens = bracket_space(current, h).basis();
    auto defect = apply_defect(b, current);
    gens.insert(gens.end(), defect.begin(), defect.end());
    current = smallest_ideal_containing(sys.algebra_ptr(), gens);
  }
  return current;
}

Subspace leibman_commutator_with_g(const AffineNilsystem& sys) {
  const Subspace h = leibman_identity_component(sys);
  std::vector<Vector<ExtScalar>> gens = bracket_space(h, Subspace::full(sys.algebra_ptr())).basis();
  auto defect = conjugation_defect_image(sys);
  gens.insert(gens.end(), defect.begin(), defect.end());
  return smallest_ideal_containing(sys.algebra_ptr(), gens);
}

FactorData quotient_system(const AffineNilsystem& sys, const Subspace& kernel) {
  if (kernel.algebra().dim() != sys.dim()) throw InvalidFactor("kernel belongs to a different algebra");
  if (!kernel.is_rational()) throw InvalidFactor("kernel is not rational");
  if (!kernel.is_ideal()) throw InvalidFactor("kernel is not an ideal");
  for (int which = 0; which < (sys.has_second_generator() ? 2 : 1); ++which)
    if (!kernel.is_invariant_under(sys.generator(which).automorphism.matrix()))
      throw InvalidFactor("kernel is not invariant under the automorphism");
  auto start = kernel.trailing_start();
  if (!start)
    throw InvalidFactor("kernel is not spanned by trailing basis vectors; re-order the basis so that it is");
  const int kept = *start;
  FactorData out{kernel, kept, std::nullopt};
  if (kept == 0) return out;

  std::vector<NilLieAlgebra::BracketSpec> brackets;
  for (const auto& spec : sys.algebra().brackets()) {
    if (spec.i >= kept || spec.j >= kept) continue;
    NilLieAlgebra::BracketSpec q{spec.i, spec.j, {}};
    for (const auto& [k, c] : spec.coeffs)
      if (k < kept) q.coeffs.emplace_back(k, c);
    if (!q.coeffs.empty()) brackets.push_back(std::move(q));
  }
  auto algebra = std::make_shared<const NilLieAlgebra>(kept, 0, brackets);
  auto reduce_map = [&](const AffineMap& map) {
    Matrix<Rational> a = map.automorphism.matrix().topLeftCorner(kept, kept);
    return AffineMap{UnipotentAutomorphism(algebra, a), ExactElement{map.translation.coords.head(kept)}};
  };
  std::optional<AffineMap> second;
  if (sys.has_second_generator()) second = reduce_map(sys.generator(1));
  out.quotient.emplace(algebra, sys.symbols(), sys.values(), reduce_map(sys.generator(0)), second);
  return out;
}

ErgodicityVerdict ergodicity_test(const AffineNilsystem& sys) {
  const auto series = lower_central_series(sys.algebra_ptr());
  const int torus_dim = sys.dim() - (series.size() > 1 ? series[1].dim() : 0);
  const Matrix<Rational>& a = sys.automorphism().matrix();
  const Vector<ExtScalar> g = sys.translation().coords.head(torus_dim);

  // Invariant frequencies: (A - I)^t k = 0 on the torus G/[G, G].
  Matrix<Rational> at(torus_dim, torus_dim);
  for (int r = 0; r < torus_dim; ++r)
    for (int c = 0; c < torus_dim; ++c) at(r, c) = a(c, r) - Rational(r == c ? 1 : 0);
  const auto invariant = rational_nullspace(at);
  if (invariant.empty()) return {true, {}};

  // Among those, the ones with <k, g> rational: every nonconstant monomial
  // coefficient of <k, g> must vanish.
  const auto slices = nonconstant_slices(g);
  Matrix<Rational> pairing(static_cast<int>(slices.size()), static_cast<int>(invariant.size()));
  for (std::size_t r = 0; r < slices.size(); ++r)
    for (std::size_t c = 0; c < invariant.size(); ++c) {
      Rational s(0);
      for (int i = 0; i < torus_dim; ++i) s += slices[r][i] * invariant[c][i];
      pairing(static_cast<int>(r), static_cast<int>(c)) = s;
    }
  std::vector<Vector<Rational>> combos;
  if (slices.empty()) {
    for (std::size_t c = 0; c < invariant.size(); ++c) combos.push_back(unit_vector<Rational>(static_cast<int>(invariant.size()), static_cast<int>(c)));
  } else {
    combos = rational_nullspace(pairing);
  }
  if (combos.empty()) return {true, {}};

  Vector<Rational> k = zero_vector<Rational>(torus_dim);
  for (std::size_t c = 0; c < invariant.size(); ++c)
    if (!combos[0][static_cast<int>(c)].is_zero()) k += invariant[c] * combos[0][static_cast<int>(c)];
  std::vector<BigInt> witness = primitive_integer_vector(k);
  Rational phase(0);
  for (int i = 0; i < torus_dim; ++i) phase += Rational(witness[i]) * g[i].constant_term();
  for (auto& w : witness) w *= phase.denominator();
  return {false, witness};
}

}  // namespace nillab
