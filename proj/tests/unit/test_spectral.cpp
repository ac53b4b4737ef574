#include "nillab/catalog/catalog.hpp"
#include "nillab/lie/ideals.hpp"
#include "nillab/spectral/parallel.hpp"
#include "nillab/spectral/spectral.hpp"
#include "nillab/structure/structure.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>
#include <cstdlib>
#include <numbers>
#include <random>

using namespace nillab;

namespace {

constexpr std::size_t kN = 20000;

AffineNilsystem build(const std::string& name) { return catalog_build(name, default_params(name)); }

Observable ch(std::vector<int> k, std::complex<double> a = 1.0) { return Observable::character(std::move(k), a); }

double frac(double t) { return t - std::floor(t); }

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }
double silver() { return std::sqrt(2.0) - 1.0; }

// Heisenberg nilmanifold as upper unitriangular matrices (a, b, c) modulo the
// integer ones. Second-kind coordinates are (a, b, c - a b).
struct HeisMatrix {
  double a, b, c;
  HeisMatrix operator*(const HeisMatrix& o) const { return {a + o.a, b + o.b, c + o.c + a * o.b}; }
  // Right multiplication by (-floor a, -floor b, 0) moves c to c - a floor(b).
  std::array<double, 3> reduced() const {
    const double x = frac(a), y = frac(b);
    return {x, y, frac(c - a * std::floor(b) - x * y)};
  }
};

// Plain Monte Carlo estimate of <f o T^n, f> for a translation by
// psi(alpha, beta, 0) on the Heisenberg nilmanifold.
std::complex<double> heis_oracle(const std::vector<int>& k, int n, std::size_t samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const HeisMatrix tau{silver(), golden(), silver() * golden()};
  HeisMatrix taun{0, 0, 0};
  for (int i = 0; i < n; ++i) taun = tau * taun;
  auto f = [&](const HeisMatrix& g) {
    auto r = g.reduced();
    return e_of(k[0] * r[0] + k[1] * r[1] + k[2] * r[2]);
  };
  std::complex<double> sum = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = u(rng), y = u(rng), z = u(rng);
    const HeisMatrix g{x, y, z + x * y};
    sum += f(taun * g) * std::conj(f(g));
  }
  return sum / static_cast<double>(samples);
}

double max_error(const AutocorrelationSeries& s, const std::function<std::complex<double>(int)>& exact) {
  double worst = 0;
  for (int n = -s.max_lag; n <= s.max_lag; ++n) worst = std::max(worst, std::abs(s.at(n) - exact(n)));
  return worst;
}

}  // namespace

TEST(Autocorrelation, SkewTorusClosedForms) {
  auto sys = build("skew_torus_nonergodic");
  auto fs = std::vector<Observable>{ch({1, 0}), ch({0, 1}), ch({1, 0}) + ch({0, 1}), ch({1, 1})};
  auto series = autocorrelation(sys, fs, 32, kN, 7);
  EXPECT_LT(max_error(series[0], [](int) { return 1.0; }), 1e-12);
  EXPECT_LT(max_error(series[1], [](int n) { return n == 0 ? 1.0 : 0.0; }), 1e-2);
  EXPECT_LT(max_error(series[2], [](int n) { return n == 0 ? 2.0 : 1.0; }), 2e-2);
  EXPECT_LT(max_error(series[3], [](int n) { return n == 0 ? 1.0 : 0.0; }), 1e-2);
}

TEST(Autocorrelation, ErgodicSkewEigenfunctionAndFiber) {
  auto sys = build("skew_torus_ergodic");
  auto fs = std::vector<Observable>{ch({1, 0}), ch({0, 1})};
  auto series = autocorrelation(sys, fs, 40, kN, 3);
  EXPECT_LT(max_error(series[0], [](int n) { return e_of(n * golden()); }), 1e-9);
  EXPECT_LT(max_error(series[1], [](int n) { return n == 0 ? 1.0 : 0.0; }), 1e-2);
}

TEST(Autocorrelation, HermitianAndBounded) {
  auto sys = build("heisenberg3");
  auto s = autocorrelation(sys, ch({1, 0, 0}, {0.5, 0.2}) + ch({0, 1, 1}) + ch({1, 0, -1}, -0.7), 64, kN, 9);
  for (int n = 0; n <= 64; ++n) {
    EXPECT_LT(std::abs(s.at(-n) - std::conj(s.at(n))), 1e-15);
    EXPECT_LE(std::abs(s.at(n)), s.c0() * (1 + 1e-12));
  }
  EXPECT_NEAR(s.c0(), 0.29 + 1 + 0.49, 2e-2);
}

TEST(Autocorrelation, HeisenbergAgainstMatrixModel) {
  auto sys = build("heisenberg3");
  for (const auto& k : std::vector<std::vector<int>>{{1, 0, 0}, {0, 0, 1}, {1, 1, 1}, {0, 1, -2}}) {
    auto s = autocorrelation(sys, ch(k), 12, 50000, 13);
    for (int n : {0, 1, 2, 5, 12}) {
      auto oracle = heis_oracle(k, n, 50000, 99 + static_cast<unsigned>(n));
      EXPECT_LT(std::abs(s.at(n) - oracle), 3e-2) << "k=" << k[0] << k[1] << k[2] << " n=" << n;
    }
  }
}

TEST(Autocorrelation, TranslatedObservableShiftsPhase) {
  // Translating by a central h = psi(0, 0, t) multiplies e(z) by e(t), which
  // leaves the series unchanged.
  auto sys = build("heisenberg3");
  auto a = autocorrelation(sys, ch({0, 0, 1}), 16, kN, 4);
  auto b = autocorrelation(sys, ch({0, 0, 1}, e_of(0.3)), 16, kN, 4);
  for (int n = -16; n <= 16; ++n) EXPECT_LT(std::abs(a.at(n) - b.at(n)), 1e-12);
}

TEST(Autocorrelation, EigenfunctionPhaseOnHeisenberg) {
  // e(y) is an eigenfunction with eigenvalue e(beta).
  auto sys = build("heisenberg3");
  auto s = autocorrelation(sys, ch({0, 1, 0}), 20, kN, 2);
  EXPECT_LT(max_error(s, [](int n) { return e_of(n * golden()); }), 1e-9);
}

TEST(Autocorrelation, IndependentOfThreadCount) {
  auto sys = build("heisenberg3");
  auto f = ch({1, 0, 1}) + ch({0, 1, -1});
  setenv("NILLAB_THREADS", "1", 1);
  auto one = autocorrelation(sys, f, 32, 30000, 5);
  setenv("NILLAB_THREADS", "4", 1);
  auto four = autocorrelation(sys, f, 32, 30000, 5);
  unsetenv("NILLAB_THREADS");
  for (int n = -32; n <= 32; ++n) EXPECT_EQ(one.at(n), four.at(n));
}

TEST(Autocorrelation, SeedChangesSamples) {
  auto sys = build("skew_torus_nonergodic");
  auto a = autocorrelation(sys, ch({0, 1}), 8, 2000, 1);
  auto b = autocorrelation(sys, ch({0, 1}), 8, 2000, 2);
  EXPECT_NE(a.at(3), b.at(3));
  EXPECT_EQ(a.seed, 1u);
}

TEST(Autocorrelation, LagCapAndDriftBudget) {
  auto sys = build("rot_torus");
  EXPECT_THROW(autocorrelation(sys, ch({1}), 1025, 100, 1), std::invalid_argument);
  EXPECT_THROW(autocorrelation(sys, ch({1}), -1, 100, 1), std::invalid_argument);
  SpectralConfig tight = default_spectral_config();
  tight.drift_budget = 1e-300;
  auto h = build("heisenberg3");
  try {
    autocorrelation(h, std::vector<Observable>{ch({0, 0, 1})}, 8, 100, 1, tight);
    FAIL() << "expected drift failure";
  } catch (const DriftBudgetExceeded& e) {
    EXPECT_GE(e.lag, 1);
  }
  EXPECT_LT(autocorrelation(h, ch({0, 0, 1}), 64, 1000, 1).drift, 1e-9);
}

TEST(Autocorrelation, ObservableDimensionMismatch) {
  EXPECT_THROW(autocorrelation(build("heisenberg3"), ch({1, 0}), 4, 100, 1), std::invalid_argument);
}

TEST(Verdict, WienerMassOnKnownSpectra) {
  auto sys = build("skew_torus_nonergodic");
  auto fs = std::vector<Observable>{ch({1, 0}), ch({0, 1}), ch({1, 0}) + ch({0, 1}), Observable{}};
  auto s = autocorrelation(sys, fs, 128, kN, 8);
  EXPECT_NEAR(wiener_atom_mass(s[0]).mass, 1.0, 1e-12);
  EXPECT_EQ(spectral_verdict(s[0]), "discrete");
  EXPECT_LT(wiener_atom_mass(s[1]).mass, 0.02);
  EXPECT_EQ(spectral_verdict(s[1]), "lebesgue-like");
  EXPECT_NEAR(wiener_atom_mass(s[2]).mass, 1.0, 3e-2);
  EXPECT_EQ(spectral_verdict(s[2]), "mixed");
  EXPECT_EQ(spectral_verdict(s[3]), "zero");
  auto short_series = autocorrelation(sys, ch({1, 0}), 32, 100, 8);
  EXPECT_THROW(wiener_atom_mass(short_series), std::invalid_argument);
}

TEST(Verdict, HalfWindowTracksDecay) {
  auto sys = build("skew_torus_nonergodic");
  auto m = wiener_atom_mass(autocorrelation(sys, ch({0, 1}), 256, kN, 8));
  // Lebesgue: mass ~ c0^2 / (2K + 1), so halving K roughly doubles it.
  EXPECT_GT(m.half_mass, 1.5 * m.mass);
  EXPECT_LT(std::abs(m.extrapolated()), m.mass);
}

TEST(Density, FejerOfEigenfunctionAndLebesgue) {
  auto sys = build("skew_torus_nonergodic");
  auto s = autocorrelation(sys, std::vector<Observable>{ch({1, 0}), ch({0, 1})}, 64, kN, 8);
  auto atom = fejer_density(s[0], 64);
  EXPECT_NEAR(atom[0], 65.0, 1e-6);
  EXPECT_NEAR(atom[32], 1.0 / 65, 1e-9);  // Fejer kernel at 1/2
  auto flat = fejer_density(s[1], 256);
  double mean = 0;
  for (double d : flat) {
    EXPECT_GE(d, 0.0);
    EXPECT_NEAR(d, 1.0, 0.5);
    mean += d / 256;
  }
  EXPECT_NEAR(mean, 1.0, 1e-9);
  EXPECT_THROW(fejer_density(s[0], 8), std::invalid_argument);
}

TEST(Uniformity, ExactValuesOnRotation) {
  auto sys = build("rot_torus");
  EXPECT_NEAR(uniformity_seminorm(sys, ch({0}), 0, {}, 1000, 1).value, 1.0, 1e-12);
  EXPECT_NEAR(uniformity_seminorm(sys, ch({1}), 0, {}, 20000, 1).value, 0.0, 1e-2);
  // U^1 of a nontrivial eigenfunction is 0; the window average decays like 1/H.
  auto coarse = uniformity_seminorm(sys, ch({1}), 1, {64}, 4096, 1).value;
  auto fine = uniformity_seminorm(sys, ch({1}), 1, {512}, 4096, 1).value;
  EXPECT_LT(fine, coarse);
  EXPECT_LT(fine, 0.06);
  EXPECT_NEAR(uniformity_seminorm(sys, ch({1}), 2, {64, 64}, 4096, 1).value, 1.0, 1e-6);
}

TEST(Uniformity, ErgodicSkewNeedsThirdLevel) {
  // e(y) is orthogonal to the Kronecker factor, so its U^2 norm vanishes,
  // while U^3 sees the full two-step structure.
  auto sys = build("skew_torus_ergodic");
  EXPECT_LT(uniformity_seminorm(sys, ch({0, 1}), 1, {64}, kN, 5).value, 0.05);
  EXPECT_LT(uniformity_seminorm(sys, ch({0, 1}), 2, {64, 64}, kN, 5).value, 0.15);
  EXPECT_NEAR(uniformity_seminorm(sys, ch({0, 1}), 3, {16, 16, 16}, 4096, 5).value, 1.0, 1e-6);
  EXPECT_NEAR(uniformity_seminorm(sys, ch({1, 0}), 2, {64, 64}, 4096, 5).value, 1.0, 1e-6);
  EXPECT_THROW(uniformity_seminorm(sys, ch({1, 0}), 4, {8, 8, 8, 8}, 100, 1), std::invalid_argument);
  EXPECT_THROW(uniformity_seminorm(sys, ch({1, 0}), 2, {8, 1}, 100, 1), std::invalid_argument);
  EXPECT_THROW(uniformity_seminorm(sys, ch({1, 0}), 2, {8, 8, 8}, 100, 1), std::invalid_argument);
}

TEST(Uniformity, NonergodicSkewFiberIsStructured) {
  auto sys = build("skew_torus_nonergodic");
  EXPECT_LT(uniformity_seminorm(sys, ch({0, 1}), 1, {64}, kN, 5).value, 0.05);
  EXPECT_NEAR(uniformity_seminorm(sys, ch({0, 1}), 2, {64, 64}, kN, 5).value, 1.0, 1e-6);
}

TEST(Uniformity, ComplementOfFactorIsSmallOnSkewTorus) {
  // A function orthogonal to the Z_1 factor has small U^2 norm.
  auto sys = build("skew_torus_nonergodic");
  auto kernel = leibman_lcs(sys, 1);
  auto p = project_to_factor(sys, ch({1, 0}) + ch({1, 1}), kernel);
  EXPECT_LE(uniformity_seminorm(sys, p.complement, 2, {64, 64}, kN, 5).value, 0.1);
}

TEST(Uniformity, HeisenbergFiberCharacterDecaysWithH) {
  // e(z) is orthogonal to the Z_1 factor; its U^2 estimate falls as H grows.
  auto sys = build("heisenberg3");
  auto coarse = uniformity_seminorm(sys, ch({0, 0, 1}), 2, {8, 8}, 20000, 5);
  auto fine = uniformity_seminorm(sys, ch({0, 0, 1}), 2, {32, 32}, 20000, 5);
  EXPECT_LT(fine.value, coarse.value);
}

TEST(Projection, ClosedFormMatchesCosetAverage) {
  auto sys = build("heisenberg3");
  auto kernel = discrete_factor_subgroup(sys);
  auto f = ch({1, 0, 0}) + ch({0, 0, 1}, 2.0) + ch({2, -1, 0}, {0, 1}) + ch({1, 1, -1});
  auto p = project_to_factor(sys, f, kernel);
  EXPECT_EQ(p.projection.terms.size(), 2u);
  EXPECT_EQ(p.complement.terms.size(), 2u);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    Vector<double> x(3);
    x << u(rng), u(rng), u(rng);
    const double xs[3] = {x[0], x[1], x[2]};
    EXPECT_LT(std::abs(coset_average(sys, f, kernel, x, 4096, 1) - p.projection(xs)), 1e-2);
    EXPECT_LT(std::abs(coset_average(sys, p.complement, kernel, x, 4096, 1)), 1e-2);
  }
}

TEST(Projection, RejectsUnsupportedKernels) {
  auto sys = build("heisenberg3");
  Vector<Rational> x(3);
  x << Rational(1), Rational(0), Rational(0);
  Subspace not_ideal(sys.algebra_ptr(), std::vector<Vector<Rational>>{x});
  EXPECT_THROW(project_to_factor(sys, ch({1, 0, 0}), not_ideal), InvalidFactor);
  auto skew = build("skew_torus_nonergodic");
  Vector<Rational> lead(2);
  lead << Rational(1), Rational(0);
  Subspace leading(skew.algebra_ptr(), std::vector<Vector<Rational>>{lead});
  EXPECT_THROW(project_to_factor(skew, ch({1, 0}), leading), InvalidFactor);
}

TEST(Projection, DichotomyOnHeisenberg) {
  auto sys = build("heisenberg3");
  auto p = project_to_factor(sys, ch({1, 0, 0}) + ch({0, 0, 1}), discrete_factor_subgroup(sys));
  auto s = autocorrelation(sys, std::vector<Observable>{p.projection, p.complement}, 128, kN, 11);
  EXPECT_EQ(spectral_verdict(s[0]), "discrete");
  EXPECT_EQ(spectral_verdict(s[1]), "lebesgue-like");
}

TEST(VerticalCharacter, CentralFrequency) {
  auto sys = build("heisenberg3");
  auto z = center(sys.algebra_ptr());
  EXPECT_TRUE(vertical_character_test(sys, ch({1, 0, 2}), z, {0, 0, 2}));
  EXPECT_FALSE(vertical_character_test(sys, ch({1, 0, 2}), z, {0, 0, 1}));
  EXPECT_FALSE(vertical_character_test(sys, ch({0, 0, 1}) + ch({0, 0, 2}), z, {0, 0, 1}));
  EXPECT_THROW(vertical_character_test(sys, ch({1, 0, 0}), Subspace::full(sys.algebra_ptr()), {0, 0, 1}),
               std::invalid_argument);
}

TEST(FiberEigenvalues, SkewTorusRotatesByBase) {
  auto sys = build("skew_torus_nonergodic");
  auto t = fiber_eigenvalues(sys, {0.3}, {{1}, {2}, {-1}});
  ASSERT_EQ(t.size(), 3u);
  EXPECT_NEAR(t[0], 0.3, 1e-12);
  EXPECT_NEAR(t[1], 0.6, 1e-12);
  EXPECT_NEAR(t[2], 0.7, 1e-12);
  auto erg = fiber_eigenvalues(build("skew_torus_ergodic"), {}, {{1, 0}, {0, 1}});
  EXPECT_NEAR(erg[0], golden(), 1e-12);
  EXPECT_NEAR(erg[1], 0.0, 1e-12);
  EXPECT_THROW(fiber_eigenvalues(build("heisenberg3"), {}, {{1, 0, 0}}), InvalidFactor);
}

TEST(Joint, SkewPairSupportsOnAxis) {
  auto sys = build("z2_skew");
  auto js = joint_autocorrelation(sys, ch({0, 1}), 8, kN, 17);
  for (int b = -8; b <= 8; ++b) EXPECT_LT(std::abs(js.at(0, b) - e_of(b * golden())), 1e-9);
  EXPECT_TRUE(subtorus_support_test(js, 1, 0, 1e-2));
  EXPECT_FALSE(subtorus_support_test(js, 0, 1, 1e-2));
  EXPECT_THROW(subtorus_support_test(js, 2, 4, 1e-2), std::invalid_argument);
  EXPECT_THROW(joint_autocorrelation(build("heisenberg3"), ch({0, 0, 1}), 4, 100, 1), InvalidSystem);
  auto d = fejer_density(js, 16);
  EXPECT_EQ(d.size(), 256u);
}

TEST(Histogram, UniformPushforwards) {
  auto ctx = make_symbols({"x", "y"});
  auto x = ExtScalar::symbol(ctx, "x"), y = ExtScalar::symbol(ctx, "y");
  auto h = pushforward_histogram(ExtScalar(Rational(3)) * x, 2, 64, kN, 1);
  for (double m : h.masses) EXPECT_NEAR(m, 1.0 / 64, 2e-3);
  // x y has density -log t, so the first bin holds (1 + log 64) / 64.
  auto sq = pushforward_histogram(x * y, 2, 64, kN, 1);
  EXPECT_NEAR(sq.max_atom, (1 + std::log(64.0)) / 64, 2e-3);
  EXPECT_LT(sq.max_atom_fine, sq.max_atom);
  double total = 0;
  for (double m : sq.masses) total += m;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_THROW(pushforward_histogram(ExtScalar(Rational(2)), 2, 64, 100, 1), std::invalid_argument);
}

TEST(Observable, ParseAndNormalize) {
  auto t = Observable::parse_term("1,-2,0:0.5:-1", 3);
  EXPECT_EQ(t.frequency, (std::vector<int>{1, -2, 0}));
  EXPECT_EQ(t.amplitude, std::complex<double>(0.5, -1));
  EXPECT_THROW(Observable::parse_term("1,2:1", 3), std::invalid_argument);
  EXPECT_THROW(Observable::parse_term("1,2,3", 3), std::invalid_argument);
  EXPECT_THROW(Observable::parse_term("1,a,3:1", 3), std::invalid_argument);
  auto f = (ch({1, 0}) + ch({1, 0}, 2.0) + ch({0, 1}, 0.0)).normalized();
  ASSERT_EQ(f.terms.size(), 1u);
  EXPECT_EQ(f.terms[0].amplitude, 3.0);
  EXPECT_DOUBLE_EQ(f.norm2(), 9.0);
  const double pt[2] = {0.25, 0.5};
  EXPECT_NEAR(std::abs(f(pt) - 3.0 * std::complex<double>(0, 1)), 0.0, 1e-12);
}

TEST(Parallel, SumIsIndependentOfWorkers) {
  auto block = [](std::size_t begin, std::size_t end, double* acc) {
    for (std::size_t i = begin; i < end; ++i) {
      acc[0] += 1.0 / (1.0 + static_cast<double>(i));
      acc[1] += std::sin(static_cast<double>(i));
    }
  };
  setenv("NILLAB_THREADS", "1", 1);
  auto a = deterministic_sum(100003, 2, block);
  setenv("NILLAB_THREADS", "3", 1);
  auto b = deterministic_sum(100003, 2, block);
  unsetenv("NILLAB_THREADS");
  EXPECT_EQ(a, b);
  EXPECT_NEAR(a[0], std::log(100003.0) + 0.5772156649, 1e-4);
}
