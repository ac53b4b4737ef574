#pragma once

#include "nillab/group/automorphism.hpp"
#include "nillab/lie/subspace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nillab {

struct InvalidSystem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One affine generator x -> g * A(x) of the action on G/Gamma.
struct AffineMap {
  UnipotentAutomorphism automorphism;
  ExactElement translation;
};

/// Affine nilsystem T(x Gamma) = g_tau A(x) Gamma on G/Gamma with
/// Gamma = psi(Z^m), optionally with a second commuting generator.
///
/// Symbols are formal transcendentals for the exact layer; `values` gives the
/// numbers they stand for in the numeric layer.
class AffineNilsystem {
 public:
  AffineNilsystem(AlgebraPtr algebra, SymbolContext symbols, std::vector<double> values, AffineMap first,
                  std::optional<AffineMap> second = std::nullopt);

  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const NilLieAlgebra& algebra() const { return *algebra_; }
  int dim() const { return algebra_->dim(); }

  const SymbolContext& symbols() const { return symbols_; }
  /// Numeric value of each symbol, by index.
  const std::vector<double>& values() const { return values_; }

  const UnipotentAutomorphism& automorphism() const { return first_.automorphism; }
  const ExactElement& translation() const { return first_.translation; }
  const AffineMap& generator(int which) const;
  bool has_second_generator() const { return second_.has_value(); }

  /// T(x) = g_tau A(x) on G (before reduction).
  ExactElement apply(const ExactElement& x, int which = 0) const;

  /// g_tau with symbols replaced by their numeric values.
  Vector<double> numeric_translation(int which = 0) const;

 private:
  AlgebraPtr algebra_;
  SymbolContext symbols_;
  std::vector<double> values_;
  AffineMap first_;
  std::optional<AffineMap> second_;
};

/// Checks that psi(Z^m) is a subgroup: products and inverses of the
/// generators psi(e_i) have integer coordinates. Throws InvalidSystem.
void validate_lattice(const NilLieAlgebra& algebra);

}  // namespace nillab
