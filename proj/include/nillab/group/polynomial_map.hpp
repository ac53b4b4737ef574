#pragma once

#include "nillab/exact/eigen_support.hpp"

#include <span>
#include <vector>

namespace nillab {

/// Polynomial map R^n -> R^k with double coefficients, compiled once from
/// exact polynomials and then evaluated in the sampling hot loops.
class PolynomialMap {
 public:
  PolynomialMap() = default;

  /// outputs[o] is a polynomial whose symbol i (0-based in its context) is
  /// input i when i >= first_input, and a parameter with value
  /// parameters[i] when i < first_input.
  PolynomialMap(const std::vector<ExtScalar>& outputs, int first_input, int inputs,
                std::span<const double> parameters = {});

  int inputs() const { return inputs_; }
  int outputs() const { return static_cast<int>(offsets_.size()) - 1; }

  /// out = P(x). Returns a bound on the rounding error of the largest output.
  double evaluate(const double* x, double* out) const;

 private:
  struct Term {
    double coeff;
    int first_factor;  // into factors_
    int factor_count;
  };
  struct Factor {
    int input;
    int exponent;
  };

  int inputs_ = 0;
  int max_degree_ = 0;
  std::vector<int> offsets_;  // term ranges per output
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
};

}  // namespace nillab
