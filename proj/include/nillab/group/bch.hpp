#pragma once

#include "nillab/lie/algebra.hpp"

#include <array>
#include <string>
#include <vector>

namespace nillab {

inline constexpr int kMaxBchStep = 5;

/// Dynkin's series for log(exp(x) exp(y)) truncated at bracket degree `step`.
///
/// Word coefficients are generated from the Dynkin sum over block
/// decompositions X^{r_1} Y^{s_1} ... X^{r_n} Y^{s_n}; a word w = l_1 ... l_k
/// stands for the right-nested bracket [l_1, [l_2, ..., [l_{k-1}, l_k]]].
/// Words ending in "YX" are folded onto "XY" with a sign flip, and shared
/// suffixes are evaluated once.
class BchPlan {
 public:
  /// Throws std::domain_error for step < 1 or step > kMaxBchStep.
  static const BchPlan& for_step(int step);

  int step() const { return step_; }
  /// Raw Dynkin coefficient of every word of length <= step (letters 'X', 'Y').
  const std::vector<std::pair<std::string, Rational>>& word_coefficients() const { return words_; }

  template <typename Scalar>
  Vector<Scalar> apply(const NilLieAlgebra& algebra, const Vector<Scalar>& x, const Vector<Scalar>& y) const;

 private:
  explicit BchPlan(int step);

  struct Node {
    int letter;  // 0 = X, 1 = Y
    int child;   // -1 for a single letter
    Rational coeff;
    double coeff_d;
  };

  int step_;
  std::vector<std::pair<std::string, Rational>> words_;
  std::vector<Node> nodes_;  // children precede parents
};

inline constexpr std::size_t kMaxBchNodes = 64;

template <typename Scalar>
Vector<Scalar> BchPlan::apply(const NilLieAlgebra& algebra, const Vector<Scalar>& x, const Vector<Scalar>& y) const {
  const int m = algebra.dim();
  Vector<Scalar> out = zero_vector<Scalar>(m);
  auto run = [&](auto& values) {
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      const Node& node = nodes_[n];
      const Vector<Scalar>& letter = node.letter == 0 ? x : y;
      if (node.child < 0) {
        values[n] = letter;
      } else {
        values[n] = algebra.bracket<Scalar>(letter, values[node.child]);
      }
      if (node.coeff.is_zero()) continue;
      if constexpr (std::is_same_v<Scalar, double>) {
        out += node.coeff_d * values[n];
      } else {
        for (int i = 0; i < m; ++i)
          if (!is_zero(values[n][i])) out[i] += from_rational<Scalar>(node.coeff) * values[n][i];
      }
    }
  };
  if constexpr (std::is_same_v<Scalar, double>) {
    std::array<Vector<double>, kMaxBchNodes> values;
    run(values);
  } else {
    std::vector<Vector<Scalar>> values(nodes_.size());
    run(values);
  }
  return out;
}

/// log(exp(x) exp(y)) in an algebra of step <= kMaxBchStep.
template <typename Scalar>
Vector<Scalar> bch(const NilLieAlgebra& algebra, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  if (algebra.is_abelian()) return x + y;
  return BchPlan::for_step(algebra.step()).apply<Scalar>(algebra, x, y);
}

}  // namespace nillab
