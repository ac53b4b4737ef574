#include "nillab/spectral/dynamics.hpp"

#include <cmath>

namespace nillab {

namespace {

ExtScalar rebase(const SymbolContext& ctx, const ExtScalar& s) { return ExtScalar::from_terms(ctx, s.terms()); }

std::vector<ExtScalar> as_list(const Vector<ExtScalar>& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

NumericDynamics::NumericDynamics(const AffineNilsystem& sys) : dim_(sys.dim()), abelian_(sys.algebra().is_abelian()) {
  const NilLieAlgebra& alg = sys.algebra();
  const int r = sys.symbols() ? static_cast<int>(sys.symbols()->size()) : 0;
  std::vector<std::string> names = sys.symbols() ? sys.symbols()->names() : std::vector<std::string>{};
  for (int i = 0; i < dim_; ++i) names.push_back("#x" + std::to_string(i + 1));
  names.push_back("#c");
  const SymbolContext ctx = make_symbols(names);

  ExactElement x{zero_vector<ExtScalar>(dim_)};
  for (int i = 0; i < dim_; ++i) x.coords[i] = ExtScalar::symbol(ctx, static_cast<std::size_t>(r + i));
  const ExtScalar c = ExtScalar::symbol(ctx, static_cast<std::size_t>(r + dim_));

  const int gens = sys.has_second_generator() ? 2 : 1;
  for (int which = 0; which < gens; ++which) {
    const AffineMap& gen = sys.generator(which);
    ExactElement g{zero_vector<ExtScalar>(dim_)};
    for (int i = 0; i < dim_; ++i) g.coords[i] = rebase(ctx, gen.translation.coords[i]);
    ExactElement fwd = multiply(alg, g, apply_automorphism(gen.automorphism, x));
    ExactElement bwd = apply_automorphism(gen.automorphism.inverse(), multiply(alg, inverse(alg, g), x));
    forward_.emplace_back(as_list(fwd.coords), r, dim_, sys.values());
    backward_.emplace_back(as_list(bwd.coords), r, dim_, sys.values());
  }
  if (!abelian_)
    for (int i = 0; i < dim_; ++i)
      shift_.emplace_back(as_list(right_multiply_basis(alg, x, i, c).coords), r, dim_ + 1, sys.values());
}

double NumericDynamics::reduce(double* x) const {
  if (abelian_) {
    for (int i = 0; i < dim_; ++i) {
      x[i] -= std::floor(x[i]);
      if (x[i] >= 1.0) x[i] = 0.0;
    }
    return 0.0;
  }
  double bound = 0.0;
  double in[kMaxDim + 1];
  for (int i = 0; i < dim_; ++i) {
    for (int attempt = 0; attempt < 3 && !(x[i] >= 0.0 && x[i] < 1.0); ++attempt) {
      double n = std::floor(x[i]);
      if (n == 0.0) n = x[i] >= 1.0 ? 1.0 : -1.0;
      std::copy(x, x + dim_, in);
      in[dim_] = -n;
      bound += shift_[i].evaluate(in, x);
    }
    if (!(x[i] >= 0.0 && x[i] < 1.0)) x[i] = 0.0;
  }
  return bound;
}

double NumericDynamics::step(double* x, int which, bool inverse) const {
  double out[kMaxDim];
  const PolynomialMap& map = inverse ? backward_.at(which) : forward_.at(which);
  double bound = map.evaluate(x, out);
  std::copy(out, out + dim_, x);
  return bound + reduce(x);
}

}  // namespace nillab
