#include "nillab/structure/system.hpp"

#include "nillab/lie/ideals.hpp"

namespace nillab {

namespace {

bool integral(const Vector<Rational>& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!v[i].is_integer()) return false;
  return true;
}

std::optional<Vector<Rational>> rational_coords(const ExactElement& g) {
  Vector<Rational> out(g.coords.size());
  for (int i = 0; i < g.coords.size(); ++i) {
    auto r = g.coords[i].as_rational();
    if (!r) return std::nullopt;
    out[i] = *r;
  }
  return out;
}

void check_generator(const AlgebraPtr& algebra, const SymbolContext& symbols, const AffineMap& map, const char* label) {
  if (map.automorphism.algebra_ptr()->dim() != algebra->dim())
    throw InvalidSystem(std::string(label) + ": automorphism belongs to a different algebra");
  if (map.translation.coords.size() != algebra->dim())
    throw InvalidSystem(std::string(label) + ": translation has " + std::to_string(map.translation.coords.size()) +
                        " coordinates, expected " + std::to_string(algebra->dim()));
  for (int i = 0; i < map.translation.coords.size(); ++i) {
    const auto& ctx = map.translation.coords[i].context();
    if (ctx && ctx != symbols) throw InvalidSystem(std::string(label) + ": translation uses an undeclared symbol context");
  }
  const int m = algebra->dim();
  for (int i = 0; i < m; ++i) {
    GroupElement<Rational> gen{unit_vector<Rational>(m, i)};
    if (!integral(apply_automorphism(map.automorphism, gen).coords))
      throw InvalidSystem(std::string(label) + ": automorphism does not map the lattice to itself (generator " +
                          std::to_string(i + 1) + ")");
  }
}

}  // namespace

void validate_lattice(const NilLieAlgebra& algebra) {
  const int m = algebra.dim();
  if (algebra.is_abelian()) return;
  for (int i = 0; i < m; ++i) {
    for (int sign : {1, -1}) {
      GroupElement<Rational> a{unit_vector<Rational>(m, i) * Rational(sign)};
      for (int j = i + 1; j < m; ++j) {
        GroupElement<Rational> b{unit_vector<Rational>(m, j)};
        auto conj = multiply(algebra, multiply(algebra, a, b), inverse(algebra, a));
        if (!integral(conj.coords))
          throw InvalidSystem("psi(Z^m) is not a subgroup: conjugating xi_" + std::to_string(j + 1) + " by xi_" +
                              std::to_string(i + 1) + " leaves the integer points");
        if (!integral(multiply(algebra, a, b).coords) || !integral(multiply(algebra, b, a).coords))
          throw InvalidSystem("psi(Z^m) is not a subgroup: product of generators " + std::to_string(i + 1) + " and " +
                              std::to_string(j + 1) + " is not integral");
      }
    }
  }
}

AffineNilsystem::AffineNilsystem(AlgebraPtr algebra, SymbolContext symbols, std::vector<double> values, AffineMap first,
                                 std::optional<AffineMap> second)
    : algebra_(std::move(algebra)),
      symbols_(std::move(symbols)),
      values_(std::move(values)),
      first_(std::move(first)),
      second_(std::move(second)) {
  const std::size_t declared = symbols_ ? symbols_->size() : 0;
  if (values_.size() != declared)
    throw InvalidSystem("expected numeric values for " + std::to_string(declared) + " symbols, got " +
                        std::to_string(values_.size()));
  validate_lattice(*algebra_);
  check_generator(algebra_, symbols_, first_, "generator 1");
  if (!second_) return;
  check_generator(algebra_, symbols_, *second_, "generator 2");
  const auto& a1 = first_.automorphism;
  const auto& a2 = second_->automorphism;
  if (!(a1.compose(a2) == a2.compose(a1))) throw InvalidSystem("generators do not commute: A1 A2 != A2 A1");
  // T1 T2 (x) = g1 A1(g2) A1A2(x) and T2 T1 (x) = g2 A2(g1) A2A1(x) agree on
  // G/Gamma iff the defect below is a central lattice point.
  const NilLieAlgebra& alg = *algebra_;
  auto lhs = multiply(alg, first_.translation, apply_automorphism(a1, second_->translation));
  auto rhs = multiply(alg, second_->translation, apply_automorphism(a2, first_.translation));
  auto defect = multiply(alg, inverse(alg, rhs), lhs);
  auto coords = rational_coords(defect);
  if (!coords || !integral(*coords)) throw InvalidSystem("generators do not commute modulo the lattice");
  Vector<ExtScalar> w = log<ExtScalar>(alg, defect);
  if (!center(algebra_).contains(w)) throw InvalidSystem("generators do not commute: defect is not central");
}

const AffineMap& AffineNilsystem::generator(int which) const {
  if (which == 0) return first_;
  if (which == 1 && second_) return *second_;
  throw std::out_of_range("system has no generator " + std::to_string(which + 1));
}

ExactElement AffineNilsystem::apply(const ExactElement& x, int which) const {
  const AffineMap& g = generator(which);
  return multiply(*algebra_, g.translation, apply_automorphism(g.automorphism, x));
}

Vector<double> AffineNilsystem::numeric_translation(int which) const {
  return evaluate(generator(which).translation.coords, values_);
}

}  // namespace nillab
