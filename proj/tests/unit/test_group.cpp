#include "nillab/group/automorphism.hpp"
#include "nillab/group/haar.hpp"
#include "nillab/group/polynomial_map.hpp"

#include "../support/matrix_oracle.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>

using namespace nillab;

namespace {

template <typename S>
Vector<S> vec(std::initializer_list<S> xs) {
  Vector<S> v(static_cast<int>(xs.size()));
  int i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

Vector<Rational> rvec(std::initializer_list<Rational> xs) { return vec<Rational>(xs); }

}  // namespace

TEST(Bch, WithZeroIsIdentity) {
  auto h = heisenberg3_algebra();
  auto x = rvec({Rational(2), Rational(1, 3), Rational(-5)});
  EXPECT_EQ(bch<Rational>(*h, x, zero_vector<Rational>(3)), x);
  EXPECT_EQ(bch<Rational>(*h, zero_vector<Rational>(3), x), x);
}

TEST(Bch, HeisenbergBasisPair) {
  auto h = heisenberg3_algebra();
  EXPECT_EQ(bch<Rational>(*h, unit_vector<Rational>(3, 0), unit_vector<Rational>(3, 1)),
            rvec({Rational(1), Rational(1), Rational(1, 2)}));
}

TEST(Bch, TwoStepClosedForm) {
  auto h = heisenberg3_algebra();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    auto x = oracle::random_rational_vector(rng, 3), y = oracle::random_rational_vector(rng, 3);
    Vector<Rational> expected = x + y;
    auto br = h->bracket<Rational>(x, y);
    for (int i = 0; i < 3; ++i) expected[i] += br[i] * Rational(1, 2);
    EXPECT_EQ(bch<Rational>(*h, x, y), expected);
  }
}

TEST(Bch, MatchesMatrixOracleExactly) {
  std::mt19937_64 rng(2);
  auto u4 = unitriangular4_algebra();
  auto l4 = oracle::heisenberg4_layout();
  for (int t = 0; t < 30; ++t) {
    auto x = oracle::random_rational_vector(rng, 6), y = oracle::random_rational_vector(rng, 6);
    EXPECT_EQ(bch<Rational>(*u4, x, y), oracle::bch(l4, x, y));
  }
}

TEST(Bch, WordCoefficientsKnownValues) {
  const auto& plan = BchPlan::for_step(3);
  std::map<std::string, Rational> c(plan.word_coefficients().begin(), plan.word_coefficients().end());
  EXPECT_EQ(c.at("X"), Rational(1));
  EXPECT_EQ(c.at("Y"), Rational(1));
  // log(e^X e^Y) = X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12 + ...
  // The word expansion of [X,Y] is XY - YX; Dynkin's words give XY: 1/2 * 1/2.
  EXPECT_EQ(c.at("XY") - c.at("YX"), Rational(1, 2));
  EXPECT_THROW(BchPlan::for_step(6), std::domain_error);
  EXPECT_THROW(BchPlan::for_step(0), std::domain_error);
}

TEST(Bch, SymbolicMatchesOracle) {
  auto ctx = make_symbols({"a", "b", "c"});
  ExtScalar a = ExtScalar::symbol(ctx, "a"), b = ExtScalar::symbol(ctx, "b"), c = ExtScalar::symbol(ctx, "c");
  auto u4 = unitriangular4_algebra();
  auto l4 = oracle::heisenberg4_layout();
  auto x = vec<ExtScalar>({a, ExtScalar(1), b, ExtScalar(0), c, ExtScalar(2)});
  auto y = vec<ExtScalar>({ExtScalar(3), c, ExtScalar(-1), a * b, ExtScalar(0), ExtScalar(1)});
  EXPECT_EQ(bch<ExtScalar>(*u4, x, y), oracle::bch(l4, x, y));
}

TEST(Group, HeisenbergProducts) {
  auto h = heisenberg3_algebra();
  GroupElement<Rational> x{rvec({1, 0, 0})}, y{rvec({0, 1, 0})};
  EXPECT_EQ(multiply(*h, x, y).coords, rvec({1, 1, 0}));
  EXPECT_EQ(multiply(*h, y, x).coords, rvec({1, 1, -1}));
  EXPECT_EQ(multiply(*h, x, identity_element<Rational>(*h)), x);
}

TEST(Group, MultiplyMatchesMatrixOracle) {
  std::mt19937_64 rng(9);
  auto u4 = unitriangular4_algebra();
  auto l4 = oracle::heisenberg4_layout();
  for (int t = 0; t < 30; ++t) {
    GroupElement<Rational> g{oracle::random_rational_vector(rng, 6)}, k{oracle::random_rational_vector(rng, 6)};
    auto expected = oracle::psi_inverse(l4, oracle::mul(oracle::psi(l4, g.coords), oracle::psi(l4, k.coords)));
    EXPECT_EQ(multiply(*u4, g, k).coords, expected);
  }
}

TEST(Group, AssociativityAndCommutatorDefinition) {
  std::mt19937_64 rng(10);
  for (const auto& alg : {heisenberg3_algebra(), unitriangular4_algebra()}) {
    for (int t = 0; t < 10; ++t) {
      const int m = alg->dim();
      GroupElement<Rational> a{oracle::random_rational_vector(rng, m)}, b{oracle::random_rational_vector(rng, m)},
          c{oracle::random_rational_vector(rng, m)};
      EXPECT_EQ(multiply(*alg, multiply(*alg, a, b), c), multiply(*alg, a, multiply(*alg, b, c)));
      auto chain = multiply(*alg, multiply(*alg, multiply(*alg, a, b), inverse(*alg, a)), inverse(*alg, b));
      EXPECT_EQ(commutator(*alg, a, b), chain);
      EXPECT_EQ(multiply(*alg, a, inverse(*alg, a)), identity_element<Rational>(*alg));
    }
  }
}

TEST(Coordinates, FirstToSecondExamples) {
  auto h = heisenberg3_algebra();
  EXPECT_EQ(first_to_second<Rational>(*h, rvec({1, 1, 0})), rvec({1, 1, Rational(-1, 2)}));
  EXPECT_EQ(first_to_second<Rational>(*h, zero_vector<Rational>(3)), zero_vector<Rational>(3));
  auto a = NilLieAlgebra::abelian(3);
  auto w = rvec({Rational(1, 2), 3, -1});
  EXPECT_EQ(first_to_second<Rational>(*a, w), w);
}

TEST(Coordinates, RoundTripAndOracle) {
  std::mt19937_64 rng(12);
  auto u4 = unitriangular4_algebra();
  auto l4 = oracle::heisenberg4_layout();
  for (int t = 0; t < 20; ++t) {
    auto w = oracle::random_rational_vector(rng, 6);
    auto second = first_to_second<Rational>(*u4, w);
    EXPECT_EQ(second_to_first<Rational>(*u4, second), w);
    EXPECT_EQ(second, oracle::psi_inverse(l4, oracle::exp_nilpotent(oracle::algebra_matrix(l4, w))));
  }
}

TEST(Reduce, TorusExample) {
  auto a = NilLieAlgebra::abelian(2);
  auto r = reduce_mod_lattice<double>(*a, {vec<double>({1.25, -0.5})});
  EXPECT_EQ(r.rep.coords, vec<double>({0.25, 0.5}));
  EXPECT_EQ(r.lattice, (std::vector<BigInt>{1, -1}));
  auto inside = reduce_mod_lattice<double>(*a, {vec<double>({0.5, 0.0})});
  EXPECT_EQ(inside.rep.coords, vec<double>({0.5, 0.0}));
  EXPECT_EQ(inside.lattice, (std::vector<BigInt>{0, 0}));
}

TEST(Reduce, HeisenbergExactWithOracleMembership) {
  auto h = heisenberg3_algebra();
  auto l3 = oracle::heisenberg3_layout();
  GroupElement<Rational> g{rvec({Rational(3, 2), Rational(1, 2), Rational(1, 4)})};
  auto r = reduce_mod_lattice(*h, g);
  for (int i = 0; i < 3; ++i) {
    EXPECT_GE(r.rep.coords[i], Rational(0));
    EXPECT_LT(r.rep.coords[i], Rational(1));
  }
  // rep^-1 g is an integer matrix.
  auto m = oracle::mul(oracle::psi(l3, inverse(*h, r.rep).coords), oracle::psi(l3, g.coords));
  for (const auto& row : m)
    for (const auto& x : row) EXPECT_TRUE(x.is_integer());
  Vector<Rational> lat(3);
  for (int i = 0; i < 3; ++i) lat[i] = Rational(r.lattice[i]);
  EXPECT_EQ(multiply(*h, r.rep, GroupElement<Rational>{lat}), g);
}

TEST(Reduce, InvariantUnderLattice) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> integer(-3, 3);
  for (const auto& alg : {heisenberg3_algebra(), unitriangular4_algebra()}) {
    const int m = alg->dim();
    for (int t = 0; t < 100; ++t) {
      GroupElement<double> g{zero_vector<double>(m)};
      GroupElement<double> gamma{zero_vector<double>(m)};
      for (int i = 0; i < m; ++i) {
        g.coords[i] = coord(rng);
        gamma.coords[i] = integer(rng);
      }
      auto a = reduce_mod_lattice(*alg, g);
      auto b = reduce_mod_lattice(*alg, multiply(*alg, g, gamma));
      Vector<double> d = a.rep.coords - b.rep.coords;
      for (int i = 0; i < m; ++i) d[i] -= std::round(d[i]);  // representatives on the boundary
      EXPECT_LE(d.cwiseAbs().maxCoeff(), 1e-12);
      Vector<double> fast = g.coords;
      reduce_in_place(*alg, fast);
      EXPECT_LE((fast - a.rep.coords).cwiseAbs().maxCoeff(), 1e-12);
    }
    for (int t = 0; t < 20; ++t) {
      GroupElement<Rational> g{oracle::random_rational_vector(rng, m)};
      Vector<Rational> lat(m);
      for (int i = 0; i < m; ++i) lat[i] = Rational(integer(rng));
      EXPECT_EQ(reduce_mod_lattice(*alg, g).rep, reduce_mod_lattice(*alg, multiply(*alg, g, GroupElement<Rational>{lat})).rep);
    }
  }
}

TEST(Reduce, SymbolicCoordinatesAreRejected) {
  auto ctx = make_symbols({"a"});
  auto h = heisenberg3_algebra();
  GroupElement<ExtScalar> g{vec<ExtScalar>({ExtScalar::symbol(ctx, "a"), ExtScalar(0), ExtScalar(0)})};
  EXPECT_THROW(reduce_mod_lattice(*h, g), NotReducible);
}

TEST(Haar, DeterministicAndOriginOffset) {
  auto p = haar_sample(3, 1, std::nullopt);
  EXPECT_EQ(p(0, 0), 0.5);
  EXPECT_EQ(p(2, 0), 0.5);
  auto a = haar_sample(4, 1000, 42), b = haar_sample(4, 1000, 42), c = haar_sample(4, 1000, 43);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  EXPECT_GE(a.minCoeff(), 0.0);
  EXPECT_LT(a.maxCoeff(), 1.0);
}

TEST(Haar, EquidistributedCharacterMean) {
  auto p = haar_sample(3, 100000, 7);
  std::complex<double> sum = 0.0;
  for (Eigen::Index n = 0; n < p.cols(); ++n) sum += std::polar(1.0, 2 * std::numbers::pi * p(0, n));
  EXPECT_LE(std::abs(sum) / static_cast<double>(p.cols()), 1e-3);
}

TEST(Automorphism, IdentityAndSkew) {
  auto a2 = NilLieAlgebra::abelian(2);
  auto id = UnipotentAutomorphism::identity(a2);
  GroupElement<Rational> g{rvec({Rational(1, 3), Rational(2, 5)})};
  EXPECT_EQ(apply_automorphism(id, g), g);
  Matrix<Rational> m(2, 2);
  m << Rational(1), Rational(0), Rational(1), Rational(1);
  UnipotentAutomorphism skew(a2, m);
  EXPECT_EQ(apply_automorphism(skew, g).coords, rvec({Rational(1, 3), Rational(11, 15)}));
  EXPECT_EQ(skew.compose(skew.inverse()), id);
}

TEST(Automorphism, HeisenbergInnerMatchesConjugationOracle) {
  auto h = heisenberg3_algebra();
  auto ad = inner_automorphism(h, GroupElement<ExtScalar>{vec<ExtScalar>({ExtScalar(1), ExtScalar(0), ExtScalar(0)})});
  Vector<ExtScalar> image = ad.apply<ExtScalar>(unit_vector<ExtScalar>(3, 1));
  EXPECT_EQ(image, vec<ExtScalar>({ExtScalar(0), ExtScalar(1), ExtScalar(1)}));
  // g xi g^-1 in matrices.
  auto l3 = oracle::heisenberg3_layout();
  auto g = oracle::psi(l3, rvec({1, 0, 0}));
  auto ginv = oracle::psi(l3, rvec({-1, 0, 0}));
  auto conj = oracle::mul(oracle::mul(g, oracle::algebra_matrix(l3, unit_vector<Rational>(3, 1))), ginv);
  EXPECT_EQ(oracle::algebra_vector(l3, conj), rvec({0, 1, 1}));
}

TEST(Automorphism, RejectsInvalidMatrices) {
  auto h = heisenberg3_algebra();
  Matrix<Rational> upper = identity_matrix<Rational>(3);
  upper(0, 1) = Rational(1);
  EXPECT_THROW(UnipotentAutomorphism(h, upper), InvalidAutomorphism);
  Matrix<Rational> scale = identity_matrix<Rational>(3);
  scale(2, 2) = Rational(2);
  EXPECT_THROW(UnipotentAutomorphism(h, scale), InvalidAutomorphism);
  Matrix<Rational> breaks = identity_matrix<Rational>(3);
  breaks(1, 0) = Rational(1);  // xi_1 -> xi_1 + xi_2 is fine, but then [A xi_1, A xi_2] = xi_3 ...
  breaks(2, 1) = Rational(0);
  EXPECT_NO_THROW(UnipotentAutomorphism(h, breaks));
  Matrix<Rational> bad = identity_matrix<Rational>(3);
  bad(2, 0) = Rational(1);
  EXPECT_NO_THROW(UnipotentAutomorphism(h, bad));
  auto u4 = unitriangular4_algebra();
  Matrix<Rational> not_hom = identity_matrix<Rational>(6);
  not_hom(3, 0) = Rational(1);  // xi_1 -> xi_1 + xi_4, but [xi_1 + xi_4, xi_3] gains -xi_6
  EXPECT_THROW(UnipotentAutomorphism(u4, not_hom), InvalidAutomorphism);
}

TEST(Automorphism, MultiplicativeAndBracketPreserving) {
  std::mt19937_64 rng(14);
  auto u4 = unitriangular4_algebra();
  // Ad of a rational point is a rational automorphism.
  GroupElement<ExtScalar> p{convert<ExtScalar>(oracle::random_rational_vector(rng, 6))};
  auto ad = inner_automorphism(u4, p);
  Matrix<Rational> m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = *ad.matrix()(r, c).as_rational();
  UnipotentAutomorphism a(u4, m);
  for (int t = 0; t < 10; ++t) {
    GroupElement<Rational> g{oracle::random_rational_vector(rng, 6)}, k{oracle::random_rational_vector(rng, 6)};
    EXPECT_EQ(apply_automorphism(a, multiply(*u4, g, k)),
              multiply(*u4, apply_automorphism(a, g), apply_automorphism(a, k)));
  }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      auto x = unit_vector<Rational>(6, i), y = unit_vector<Rational>(6, j);
      EXPECT_EQ(a.apply<Rational>(u4->bracket<Rational>(x, y)), u4->bracket<Rational>(a.apply<Rational>(x), a.apply<Rational>(y)));
    }
}

TEST(PolynomialMap, EvaluatesBoundParameters) {
  auto ctx = make_symbols({"p", "x", "y"});
  ExtScalar p = ExtScalar::symbol(ctx, "p"), x = ExtScalar::symbol(ctx, "x"), y = ExtScalar::symbol(ctx, "y");
  std::vector<ExtScalar> outs{x + p * y * y, ExtScalar(Rational(1, 2)) + x * y};
  std::vector<double> params{3.0};
  PolynomialMap map(outs, 1, 2, params);
  double in[2] = {2.0, 0.5}, out[2];
  map.evaluate(in, out);
  EXPECT_DOUBLE_EQ(out[0], 2.75);
  EXPECT_DOUBLE_EQ(out[1], 1.5);
}
