#pragma once

#include "nillab/spectral/dynamics.hpp"
#include "nillab/spectral/observable.hpp"
#include "nillab/structure/structure.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace nillab {

/// Calibration constants of the numeric layer, kept in one place.
struct SpectralConfig {
  double atom_threshold = 0.9;    // discrete when atom_mass >= this * c(0)
  double decay_threshold = 0.05;  // lebesgue-like when atom_mass <= this * c(0)
  double drift_budget = 1e-9;     // per-step rounding bound
  int lag_cap = 1024;
  double zero_norm = 1e-12;       // c(0) below this: the observable vanishes
};

const SpectralConfig& default_spectral_config();

/// Estimates c(n) for n = -K..K. c(-n) = conj(c(n)) by construction.
struct AutocorrelationSeries {
  int max_lag = 0;
  std::vector<std::complex<double>> values;  // index n + max_lag
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double drift = 0.0;  // largest accumulated rounding bound along an orbit

  std::complex<double> at(int n) const { return values.at(static_cast<std::size_t>(n + max_lag)); }
  double c0() const { return at(0).real(); }
};

/// c(n1, n2) = <f o T1^n1 T2^n2, f> on the square |n1|, |n2| <= K.
struct JointSeries {
  int max_lag = 0;
  std::vector<std::complex<double>> values;  // row n1 + K, column n2 + K
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  std::complex<double> at(int n1, int n2) const {
    const int w = 2 * max_lag + 1;
    return values.at(static_cast<std::size_t>((n1 + max_lag) * w + n2 + max_lag));
  }
  double c0() const { return at(0, 0).real(); }
};

/// One orbit per QMC sample, shared by all observables. The lag-n estimate is
/// S_n sqrt(E_0 / E_n) / N with S_n = sum conj(f(x)) f(T^n x) and
/// E_n = sum |f(T^n x)|^2, which keeps |c(n)| <= c(0) exactly.
std::vector<AutocorrelationSeries> autocorrelation(const AffineNilsystem& sys, const std::vector<Observable>& fs,
                                                   int max_lag, std::size_t samples, std::uint64_t seed,
                                                   const SpectralConfig& config = default_spectral_config());

AutocorrelationSeries autocorrelation(const AffineNilsystem& sys, const Observable& f, int max_lag, std::size_t samples,
                                      std::uint64_t seed, const SpectralConfig& config = default_spectral_config());

struct AtomMass {
  int k = 0;
  double mass = 0.0;       // (1 / (2K + 1)) sum_{|n| <= K} |c(n)|^2
  double half_mass = 0.0;  // same at K/2
  double extrapolated() const { return 2.0 * mass - half_mass; }
};

/// Needs K >= 64.
AtomMass wiener_atom_mass(const AutocorrelationSeries& series);

/// "discrete", "lebesgue-like", "mixed" or "zero".
std::string spectral_verdict(const AutocorrelationSeries& series, const SpectralConfig& config = default_spectral_config());

/// Fejer-smoothed density of sigma_f at theta = j / grid, clamped at 0.
std::vector<double> fejer_density(const AutocorrelationSeries& series, int grid);
/// Row-major grid x grid density for a joint series.
std::vector<double> fejer_density(const JointSeries& series, int grid);

struct SeminormEstimate {
  int s = 0;
  double value = 0.0;
  double stability_delta = 0.0;  // change when every H is halved
};

/// ||f||_{U^s} by the finite recursion with U^0 = integral. Level i averages
/// h_i over the window [H_i / 2, H_i), the Richardson combination
/// 2 A(H) - A(H/2) of plain Cesaro means, which removes their 1/H bias.
SeminormEstimate uniformity_seminorm(const AffineNilsystem& sys, const Observable& f, int s,
                                     const std::vector<int>& levels, std::size_t samples, std::uint64_t seed);

/// Splits f into its conditional expectation on the factor G / exp(N) Gamma
/// and the remainder. N must be a rational A-invariant ideal spanned by
/// trailing basis vectors; the fiber is then the trailing coordinate cube
/// and the average keeps exactly the terms with zero trailing frequency.
struct Projection {
  Observable projection;
  Observable complement;
};
Projection project_to_factor(const AffineNilsystem& sys, const Observable& f, const Subspace& kernel);

/// QMC average of f over the coset x exp(N) for a trailing ideal N.
std::complex<double> coset_average(const AffineNilsystem& sys, const Observable& f, const Subspace& kernel,
                                   const Vector<double>& x, std::size_t samples, std::uint64_t seed);

/// Checks f(z x) = chi(z) f(x) with chi(z) = e(<frequency, z>) for central z
/// in exp(ideal), on `samples` QMC pairs, to 1e-6.
bool vertical_character_test(const AffineNilsystem& sys, const Observable& f, const Subspace& central_ideal,
                             const std::vector<int>& frequency, std::size_t samples = 256, std::uint64_t seed = 1);

/// Angles t_j(y) in [0, 1) with e(t_j) = chi_j(g^-1 g_tau A(g)) for the
/// section g = psi(y, 0) over the base point y. Requires an abelian Leibman
/// component spanned by basis vectors; y lists the remaining coordinates and
/// each character is an integer vector on the Leibman coordinates.
std::vector<double> fiber_eigenvalues(const AffineNilsystem& sys, const std::vector<double>& y,
                                      const std::vector<std::vector<int>>& characters);

JointSeries joint_autocorrelation(const AffineNilsystem& sys, const Observable& f, int max_lag, std::size_t samples,
                                  std::uint64_t seed);

/// |c(n1, n2)| <= tolerance wherever k1 n1 + k2 n2 != 0.
bool subtorus_support_test(const JointSeries& series, int k1, int k2, double tolerance);

struct Histogram {
  std::vector<double> masses;  // bins of p mod 1
  double max_atom = 0.0;       // largest bin mass
  double max_atom_fine = 0.0;  // same at twice the resolution
};

/// Histogram of p(x) mod 1 for x QMC-uniform on [0,1)^inputs. p is a
/// polynomial whose symbols are the inputs, in context order.
Histogram pushforward_histogram(const ExtScalar& p, int inputs, int bins, std::size_t samples, std::uint64_t seed);

}  // namespace nillab
