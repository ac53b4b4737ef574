#pragma once

#include "nillab/group/polynomial_map.hpp"
#include "nillab/structure/system.hpp"

#include <stdexcept>
#include <string>

namespace nillab {

struct DriftBudgetExceeded : std::runtime_error {
  DriftBudgetExceeded(int lag, double drift)
      : std::runtime_error("numeric drift budget exceeded at lag " + std::to_string(lag) + " (bound " +
                           std::to_string(drift) + ")"),
        lag(lag) {}
  int lag;
};

/// Numeric form of the affine maps on the fundamental domain. T, T^-1 and
/// the right multiplications used by lattice reduction are expanded once as
/// exact polynomials in the coordinates and compiled with the symbol values
/// bound, so each step is a handful of fused polynomial evaluations.
class NumericDynamics {
 public:
  explicit NumericDynamics(const AffineNilsystem& sys);

  int dim() const { return dim_; }
  int generators() const { return static_cast<int>(forward_.size()); }

  /// x <- reduce(T_which^{+-1}(x)) in place. Returns the rounding bound.
  double step(double* x, int which = 0, bool inverse = false) const;

  /// x <- representative of x Gamma in [0,1)^m. Returns the rounding bound.
  double reduce(double* x) const;

 private:
  int dim_;
  bool abelian_;
  std::vector<PolynomialMap> forward_;
  std::vector<PolynomialMap> backward_;
  std::vector<PolynomialMap> shift_;  // x * exp(c xi_i), inputs (x, c)
};

}  // namespace nillab
