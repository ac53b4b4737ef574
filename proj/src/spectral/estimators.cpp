#include "nillab/spectral/spectral.hpp"

#include "nillab/group/haar.hpp"
#include "nillab/lie/ideals.hpp"
#include "nillab/spectral/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nillab {

namespace {

using cd = std::complex<double>;

// All observables of one run share a table of distinct frequencies. Each
// step computes e(x_i)^k by repeated multiplication and one product per
// frequency, instead of one complex exponential per term.
class FrequencyBank {
 public:
  FrequencyBank(int dim, const std::vector<Observable>& fs) : dim_(dim), reach_(dim, 0) {
    std::map<std::vector<int>, int> index;
    for (const auto& f : fs) {
      std::vector<std::pair<int, cd>> terms;
      for (const auto& t : f.normalized().terms) {
        if (static_cast<int>(t.frequency.size()) != dim)
          throw std::invalid_argument("observable has " + std::to_string(t.frequency.size()) +
                                      " frequency components, system has " + std::to_string(dim));
        auto [it, inserted] = index.try_emplace(t.frequency, static_cast<int>(freqs_.size()));
        if (inserted) freqs_.push_back(t.frequency);
        for (int i = 0; i < dim; ++i) reach_[i] = std::max(reach_[i], std::abs(t.frequency[i]));
        terms.emplace_back(it->second, t.amplitude);
      }
      observables_.push_back(std::move(terms));
    }
    for (int i = 0; i < dim; ++i) {
      offset_.push_back(width_ + reach_[i]);
      width_ += 2 * reach_[i] + 1;
    }
  }

  std::size_t count() const { return observables_.size(); }

  struct Scratch {
    std::vector<cd> powers, chars;
  };
  Scratch scratch() const { return {std::vector<cd>(static_cast<std::size_t>(width_)), std::vector<cd>(freqs_.size())}; }

  // out[j] = f_j(x).
  void evaluate(const double* x, Scratch& s, cd* out) const {
    for (int i = 0; i < dim_; ++i) {
      cd* p = s.powers.data() + offset_[i];
      p[0] = 1.0;
      if (reach_[i] == 0) continue;
      const cd base = e_of(x[i]);
      for (int k = 1; k <= reach_[i]; ++k) {
        p[k] = p[k - 1] * base;
        p[-k] = std::conj(p[k]);
      }
    }
    for (std::size_t f = 0; f < freqs_.size(); ++f) {
      cd v = 1.0;
      for (int i = 0; i < dim_; ++i)
        if (freqs_[f][i] != 0) v *= s.powers[static_cast<std::size_t>(offset_[i] + freqs_[f][i])];
      s.chars[f] = v;
    }
    for (std::size_t j = 0; j < observables_.size(); ++j) {
      cd v = 0.0;
      for (const auto& [f, a] : observables_[j]) v += a * s.chars[static_cast<std::size_t>(f)];
      out[j] = v;
    }
  }

 private:
  int dim_;
  std::vector<int> reach_;
  std::vector<int> offset_;
  int width_ = 0;
  std::vector<std::vector<int>> freqs_;
  std::vector<std::vector<std::pair<int, cd>>> observables_;
};

void atomic_max(std::atomic<double>& target, double v) {
  double cur = target.load();
  while (v > cur && !target.compare_exchange_weak(cur, v)) {
  }
}

void check_lags(int max_lag, const SpectralConfig& config) {
  if (max_lag < 0) throw std::invalid_argument("lag range must be nonnegative");
  if (max_lag > config.lag_cap)
    throw std::invalid_argument("lag " + std::to_string(max_lag) + " exceeds the cap of " + std::to_string(config.lag_cap));
}

// Tracks the accumulated rounding bound of one orbit.
struct DriftMeter {
  const SpectralConfig& config;
  double total = 0.0;
  void add(double bound, int lag) {
    total += bound;
    if (bound > config.drift_budget) throw DriftBudgetExceeded(lag, bound);
  }
};

cd normalized_lag(double sre, double sim, double e0, double en, std::size_t n) {
  if (en <= 0.0 || e0 <= 0.0) return 0.0;
  return cd(sre, sim) * std::sqrt(e0 / en) / static_cast<double>(n);
}

Observable filtered(const Observable& f, int first, bool keep_zero_tail) {
  Observable out;
  for (const auto& t : f.normalized().terms) {
    bool zero_tail = true;
    for (std::size_t i = static_cast<std::size_t>(first); i < t.frequency.size(); ++i) zero_tail = zero_tail && t.frequency[i] == 0;
    if (zero_tail == keep_zero_tail) out.terms.push_back(t);
  }
  return out;
}

int trailing_kernel_start(const AffineNilsystem& sys, const Subspace& kernel) {
  if (kernel.algebra().dim() != sys.dim()) throw InvalidFactor("kernel belongs to a different algebra");
  if (!kernel.is_rational()) throw InvalidFactor("kernel is not rational");
  if (!kernel.is_ideal()) throw InvalidFactor("kernel is not an ideal");
  const int gens = sys.has_second_generator() ? 2 : 1;
  for (int w = 0; w < gens; ++w)
    if (!kernel.is_invariant_under(sys.generator(w).automorphism.matrix()))
      throw InvalidFactor("kernel is not invariant under the automorphism");
  auto start = kernel.trailing_start();
  if (!start) throw InvalidFactor("kernel is not spanned by trailing basis vectors");
  return *start;
}

}  // namespace

const SpectralConfig& default_spectral_config() {
  static const SpectralConfig config;
  return config;
}

std::vector<AutocorrelationSeries> autocorrelation(const AffineNilsystem& sys, const std::vector<Observable>& fs,
                                                   int max_lag, std::size_t samples, std::uint64_t seed,
                                                   const SpectralConfig& config) {
  check_lags(max_lag, config);
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int m = sys.dim();
  const NumericDynamics dyn(sys);
  const FrequencyBank bank(m, fs);
  const Matrix<double> points = haar_sample(m, samples, seed);
  const std::size_t nf = fs.size();
  const std::size_t lags = static_cast<std::size_t>(max_lag) + 1;
  std::atomic<double> drift{0.0};

  auto sums = deterministic_sum(samples, nf * lags * 3, [&](std::size_t begin, std::size_t end, double* acc) {
    auto scratch = bank.scratch();
    std::vector<cd> f0(nf), fn(nf);
    double x[kMaxDim];
    double worst = 0.0;
    for (std::size_t s = begin; s < end; ++s) {
      std::copy_n(points.col(static_cast<Eigen::Index>(s)).data(), m, x);
      bank.evaluate(x, scratch, f0.data());
      DriftMeter meter{config};
      for (std::size_t n = 0; n < lags; ++n) {
        if (n > 0) {
          meter.add(dyn.step(x), static_cast<int>(n));
          bank.evaluate(x, scratch, fn.data());
        } else {
          fn = f0;
        }
        for (std::size_t j = 0; j < nf; ++j) {
          double* a = acc + (j * lags + n) * 3;
          const cd p = std::conj(f0[j]) * fn[j];
          a[0] += p.real();
          a[1] += p.imag();
          a[2] += std::norm(fn[j]);
        }
      }
      worst = std::max(worst, meter.total);
    }
    atomic_max(drift, worst);
  });

  std::vector<AutocorrelationSeries> out(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    auto& series = out[j];
    series.max_lag = max_lag;
    series.samples = samples;
    series.seed = seed;
    series.drift = drift.load();
    series.values.assign(2 * lags - 1, 0.0);
    const double* a = sums.data() + j * lags * 3;
    const double e0 = a[2];
    series.values[static_cast<std::size_t>(max_lag)] = e0 / static_cast<double>(samples);
    for (std::size_t n = 1; n < lags; ++n) {
      cd c = normalized_lag(a[n * 3], a[n * 3 + 1], e0, a[n * 3 + 2], samples);
      series.values[static_cast<std::size_t>(max_lag) + n] = c;
      series.values[static_cast<std::size_t>(max_lag) - n] = std::conj(c);
    }
  }
  return out;
}

AutocorrelationSeries autocorrelation(const AffineNilsystem& sys, const Observable& f, int max_lag, std::size_t samples,
                                      std::uint64_t seed, const SpectralConfig& config) {
  return autocorrelation(sys, std::vector<Observable>{f}, max_lag, samples, seed, config).front();
}

AtomMass wiener_atom_mass(const AutocorrelationSeries& series) {
  if (series.max_lag < 64) throw std::invalid_argument("atom mass needs at least 64 lags");
  auto cesaro = [&](int k) {
    double s = 0.0;
    for (int n = -k; n <= k; ++n) s += std::norm(series.at(n));
    return s / (2.0 * k + 1.0);
  };
  return {series.max_lag, cesaro(series.max_lag), cesaro(series.max_lag / 2)};
}

std::string spectral_verdict(const AutocorrelationSeries& series, const SpectralConfig& config) {
  const double c0 = series.c0();
  if (c0 < config.zero_norm) return "zero";
  const double mass = wiener_atom_mass(series).mass;
  if (mass >= config.atom_threshold * c0) return "discrete";
  if (mass <= config.decay_threshold * c0) return "lebesgue-like";
  return "mixed";
}

std::vector<double> fejer_density(const AutocorrelationSeries& series, int grid) {
  if (grid < 16) throw std::invalid_argument("density grid must have at least 16 points");
  const int k = series.max_lag;
  std::vector<double> out(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) {
    const double theta = static_cast<double>(j) / grid;
    double v = series.c0();
    for (int n = 1; n <= k; ++n) {
      const double w = 1.0 - static_cast<double>(n) / (k + 1);
      v += 2.0 * w * (series.at(n) * e_of(-n * theta)).real();
    }
    out[static_cast<std::size_t>(j)] = std::max(0.0, v);
  }
  return out;
}

std::vector<double> fejer_density(const JointSeries& series, int grid) {
  if (grid < 16) throw std::invalid_argument("density grid must have at least 16 points");
  const int k = series.max_lag;
  std::vector<double> out(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      const double t1 = static_cast<double>(a) / grid, t2 = static_cast<double>(b) / grid;
      double v = 0.0;
      for (int n1 = -k; n1 <= k; ++n1)
        for (int n2 = -k; n2 <= k; ++n2) {
          const double w = (1.0 - std::abs(n1) / (k + 1.0)) * (1.0 - std::abs(n2) / (k + 1.0));
          v += w * (series.at(n1, n2) * e_of(-(n1 * t1 + n2 * t2))).real();
        }
      out[static_cast<std::size_t>(a * grid + b)] = std::max(0.0, v);
    }
  return out;
}

SeminormEstimate uniformity_seminorm(const AffineNilsystem& sys, const Observable& f, int s,
                                     const std::vector<int>& levels, std::size_t samples, std::uint64_t seed) {
  if (s < 0 || s > 3) throw std::invalid_argument("seminorm order must be in 0..3");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int m = sys.dim();
  const FrequencyBank bank(m, {f});
  const Matrix<double> points = haar_sample(m, samples, seed);
  if (s == 0) {
    auto sums = deterministic_sum(samples, 2, [&](std::size_t begin, std::size_t end, double* acc) {
      auto scratch = bank.scratch();
      for (std::size_t i = begin; i < end; ++i) {
        cd v;
        bank.evaluate(points.col(static_cast<Eigen::Index>(i)).data(), scratch, &v);
        acc[0] += v.real();
        acc[1] += v.imag();
      }
    });
    return {0, std::abs(cd(sums[0], sums[1])) / static_cast<double>(samples), 0.0};
  }
  std::vector<int> h_max(levels);
  if (h_max.size() == 1) h_max.assign(static_cast<std::size_t>(s), levels.front());
  if (static_cast<int>(h_max.size()) != s) throw std::invalid_argument("need one H per seminorm level");
  for (int h : h_max)
    if (h < 2) throw std::invalid_argument("every H must be at least 2");
  int orbit = 0;
  for (int h : h_max) orbit += h - 1;
  check_lags(orbit, default_spectral_config());
  const NumericDynamics dyn(sys);
  const int corners = 1 << s;

  // Odometer over h in prod [lo_i, hi_i); returns (sum of corner products, count).
  auto cube_sum = [&](const std::vector<cd>& vals, const std::vector<int>& lo, const std::vector<int>& hi) {
    std::vector<int> h(lo);
    double total = 0.0;
    for (int i = 0; i < s; ++i)
      if (lo[i] >= hi[i]) return total;
    for (;;) {
      cd prod = 1.0;
      for (int mask = 0; mask < corners; ++mask) {
        int at = 0;
        for (int i = 0; i < s; ++i)
          if (mask >> i & 1) at += h[i];
        const cd v = vals[static_cast<std::size_t>(at)];
        prod *= (std::popcount(static_cast<unsigned>(mask)) % 2) ? std::conj(v) : v;
      }
      total += prod.real();
      int i = 0;
      while (i < s && ++h[i] == hi[i]) {
        h[i] = lo[i];
        ++i;
      }
      if (i == s) return total;
    }
  };
  std::vector<int> lo(static_cast<std::size_t>(s)), hi(lo), lo2(lo), hi2(lo);
  double cells = 1.0, cells2 = 1.0;
  for (int i = 0; i < s; ++i) {
    lo[i] = h_max[i] / 2;
    hi[i] = h_max[i];
    lo2[i] = h_max[i] / 4;
    hi2[i] = h_max[i] / 2;
    cells *= hi[i] - lo[i];
    cells2 *= std::max(0, hi2[i] - lo2[i]);
  }
  auto sums = deterministic_sum(samples, 2, [&](std::size_t begin, std::size_t end, double* acc) {
    auto scratch = bank.scratch();
    std::vector<cd> vals(static_cast<std::size_t>(orbit) + 1);
    double x[kMaxDim];
    for (std::size_t i = begin; i < end; ++i) {
      std::copy_n(points.col(static_cast<Eigen::Index>(i)).data(), m, x);
      DriftMeter meter{default_spectral_config()};
      for (int n = 0; n <= orbit; ++n) {
        if (n > 0) meter.add(dyn.step(x), n);
        bank.evaluate(x, scratch, &vals[static_cast<std::size_t>(n)]);
      }
      acc[0] += cube_sum(vals, lo, hi);
      acc[1] += cube_sum(vals, lo2, hi2);
    }
  });
  const double power = 1.0 / corners;
  auto finish = [&](double sum, double n) {
    if (n <= 0.0) return 0.0;
    return std::pow(std::max(0.0, sum / (n * static_cast<double>(samples))), power);
  };
  const double value = finish(sums[0], cells);
  const double delta = cells2 > 0.0 ? std::abs(value - finish(sums[1], cells2)) : 0.0;
  return {s, value, delta};
}

Projection project_to_factor(const AffineNilsystem& sys, const Observable& f, const Subspace& kernel) {
  if (kernel.is_zero()) {
    if (kernel.algebra().dim() != sys.dim()) throw InvalidFactor("kernel belongs to a different algebra");
    return {f.normalized(), Observable{}};
  }
  const int first = trailing_kernel_start(sys, kernel);
  return {filtered(f, first, true), filtered(f, first, false)};
}

std::complex<double> coset_average(const AffineNilsystem& sys, const Observable& f, const Subspace& kernel,
                                   const Vector<double>& x, std::size_t samples, std::uint64_t seed) {
  const NilLieAlgebra& alg = sys.algebra();
  const int m = sys.dim();
  if (kernel.is_zero()) {
    Vector<double> r = x;
    reduce_in_place(alg, r);
    return f(r.data());
  }
  const int first = trailing_kernel_start(sys, kernel);
  const Matrix<double> cube = haar_sample(m - first, samples, seed);
  cd total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    NumericElement g{x};
    for (int i = first; i < m; ++i) g = right_multiply_basis(alg, g, i, cube(i - first, static_cast<Eigen::Index>(s)));
    reduce_in_place(alg, g.coords);
    total += f(g.coords.data());
  }
  return total / static_cast<double>(samples);
}

bool vertical_character_test(const AffineNilsystem& sys, const Observable& f, const Subspace& central_ideal,
                             const std::vector<int>& frequency, std::size_t samples, std::uint64_t seed) {
  const NilLieAlgebra& alg = sys.algebra();
  const int m = sys.dim();
  if (central_ideal.algebra().dim() != m) throw std::invalid_argument("ideal belongs to a different algebra");
  if (!central_ideal.is_rational()) throw std::invalid_argument("vertical ideal must be rational");
  if (!center(sys.algebra_ptr()).contains(central_ideal)) throw std::invalid_argument("vertical ideal is not central");
  if (static_cast<int>(frequency.size()) != m) throw std::invalid_argument("character frequency must have one entry per coordinate");
  const auto basis = central_ideal.rational_basis();
  const int d = static_cast<int>(basis.size());
  const Matrix<double> pts = haar_sample(m + std::max(d, 1), samples, seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto col = pts.col(static_cast<Eigen::Index>(s));
    Vector<double> x = col.head(m);
    Vector<double> z = zero_vector<double>(m);
    for (int b = 0; b < d; ++b) {
      const double c = 4.0 * col[m + b] - 2.0;
      for (int i = 0; i < m; ++i) z[i] += c * basis[static_cast<std::size_t>(b)][i].to_double();
    }
    double phase = 0.0;
    for (int i = 0; i < m; ++i) phase += frequency[static_cast<std::size_t>(i)] * z[i];
    NumericElement zx = multiply(alg, exp<double>(alg, z), NumericElement{x});
    reduce_in_place(alg, zx.coords);
    const cd lhs = f(zx.coords.data());
    const cd rhs = e_of(phase) * f(x.data());
    if (std::abs(lhs - rhs) > 1e-6 * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

std::vector<double> fiber_eigenvalues(const AffineNilsystem& sys, const std::vector<double>& y,
                                      const std::vector<std::vector<int>>& characters) {
  const NilLieAlgebra& alg = sys.algebra();
  const int m = sys.dim();
  const Subspace h = leibman_identity_component(sys);
  if (!derived_subalgebra(h).is_zero()) throw InvalidFactor("Leibman component is not abelian");
  std::vector<bool> in_h(static_cast<std::size_t>(m), false);
  for (const auto& b : h.basis()) {
    int nonzero = 0;
    for (int i = 0; i < m; ++i) nonzero += b[i].is_zero() ? 0 : 1;
    if (nonzero != 1) throw InvalidFactor("Leibman component is not spanned by basis vectors");
  }
  for (int p : h.pivots()) in_h[static_cast<std::size_t>(p)] = true;
  const std::size_t base_dim = static_cast<std::size_t>(m - h.dim());
  if (y.size() != base_dim)
    throw std::invalid_argument("base point needs " + std::to_string(base_dim) + " coordinates");

  NumericElement g{zero_vector<double>(m)};
  for (int i = 0, k = 0; i < m; ++i)
    if (!in_h[static_cast<std::size_t>(i)]) g.coords[i] = y[static_cast<std::size_t>(k++)];
  NumericElement tau{sys.numeric_translation()};
  NumericElement d = multiply(alg, inverse(alg, g), multiply(alg, tau, apply_automorphism(sys.automorphism(), g)));
  for (int i = 0; i < m; ++i)
    if (!in_h[static_cast<std::size_t>(i)] && std::abs(d.coords[i]) > 1e-9)
      throw InvalidFactor("g^-1 tau g leaves the Leibman component");

  std::vector<double> angles;
  for (const auto& chi : characters) {
    if (static_cast<int>(chi.size()) != h.dim())
      throw std::invalid_argument("character needs " + std::to_string(h.dim()) + " entries");
    double t = 0.0;
    for (int i = 0, k = 0; i < m; ++i)
      if (in_h[static_cast<std::size_t>(i)]) t += chi[static_cast<std::size_t>(k++)] * d.coords[i];
    t -= std::floor(t);
    angles.push_back(t >= 1.0 ? 0.0 : t);
  }
  return angles;
}

JointSeries joint_autocorrelation(const AffineNilsystem& sys, const Observable& f, int max_lag, std::size_t samples,
                                  std::uint64_t seed) {
  if (!sys.has_second_generator()) throw InvalidSystem("joint autocorrelation needs two commuting generators");
  const SpectralConfig& config = default_spectral_config();
  check_lags(2 * max_lag, config);
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int m = sys.dim();
  const NumericDynamics dyn(sys);
  const FrequencyBank bank(m, {f});
  const Matrix<double> points = haar_sample(m, samples, seed);
  const int k = max_lag, w = 2 * max_lag + 1;
  const std::size_t cells = static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(w);

  // Cell (n1, n2) with n1 >= 0 at index n1 * w + n2 + k.
  auto sums = deterministic_sum(samples, cells * 3, [&](std::size_t begin, std::size_t end, double* acc) {
    auto scratch = bank.scratch();
    double x0[kMaxDim], x[kMaxDim];
    for (std::size_t s = begin; s < end; ++s) {
      std::copy_n(points.col(static_cast<Eigen::Index>(s)).data(), m, x0);
      cd f0;
      bank.evaluate(x0, scratch, &f0);
      for (int dir = 1; dir >= -1; dir -= 2) {
        double column[kMaxDim];
        std::copy_n(x0, m, column);
        DriftMeter col_meter{config};
        for (int n2 = 0; n2 <= k; ++n2) {
          if (n2 > 0) col_meter.add(dyn.step(column, 1, dir < 0), n2);
          if (dir < 0 && n2 == 0) continue;
          std::copy_n(column, m, x);
          DriftMeter row_meter{config};
          for (int n1 = 0; n1 <= k; ++n1) {
            if (n1 > 0) row_meter.add(dyn.step(x, 0), n1 + n2);
            cd v;
            bank.evaluate(x, scratch, &v);
            double* a = acc + (static_cast<std::size_t>(n1) * w + static_cast<std::size_t>(dir * n2 + k)) * 3;
            const cd p = std::conj(f0) * v;
            a[0] += p.real();
            a[1] += p.imag();
            a[2] += std::norm(v);
          }
        }
      }
    }
  });

  JointSeries out;
  out.max_lag = k;
  out.samples = samples;
  out.seed = seed;
  out.values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(w), 0.0);
  const double e0 = sums[static_cast<std::size_t>(k) * 3 + 2];
  auto set = [&](int n1, int n2, cd v) {
    out.values[static_cast<std::size_t>((n1 + k) * w + n2 + k)] = v;
    out.values[static_cast<std::size_t>((-n1 + k) * w - n2 + k)] = std::conj(v);
  };
  for (int n1 = 0; n1 <= k; ++n1)
    for (int n2 = -k; n2 <= k; ++n2) {
      if (n1 == 0 && n2 < 0) continue;
      const double* a = sums.data() + (static_cast<std::size_t>(n1) * w + static_cast<std::size_t>(n2 + k)) * 3;
      set(n1, n2, (n1 == 0 && n2 == 0) ? cd(e0 / static_cast<double>(samples)) : normalized_lag(a[0], a[1], e0, a[2], samples));
    }
  return out;
}

bool subtorus_support_test(const JointSeries& series, int k1, int k2, double tolerance) {
  if (k1 == 0 && k2 == 0) throw std::invalid_argument("support direction must be nonzero");
  if (std::gcd(k1, k2) != 1) throw std::invalid_argument("support direction must be primitive");
  const int k = series.max_lag;
  for (int n1 = -k; n1 <= k; ++n1)
    for (int n2 = -k; n2 <= k; ++n2)
      if (k1 * n1 + k2 * n2 != 0 && std::abs(series.at(n1, n2)) > tolerance) return false;
  return true;
}

Histogram pushforward_histogram(const ExtScalar& p, int inputs, int bins, std::size_t samples, std::uint64_t seed) {
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  if (inputs < 1) throw std::invalid_argument("need at least one input");
  if (p.degree() <= 0)
    throw std::invalid_argument("constant polynomial: its gradient vanishes everywhere, so the pushforward is a point mass");
  if (p.context() && static_cast<int>(p.context()->size()) > inputs)
    throw std::invalid_argument("polynomial has more variables than inputs");
  const PolynomialMap map({p}, 0, inputs);
  const Matrix<double> points = haar_sample(inputs, samples, seed);
  const std::size_t nb = static_cast<std::size_t>(bins);
  auto counts = deterministic_sum(samples, 3 * nb, [&](std::size_t begin, std::size_t end, double* acc) {
    for (std::size_t s = begin; s < end; ++s) {
      double v;
      map.evaluate(points.col(static_cast<Eigen::Index>(s)).data(), &v);
      v -= std::floor(v);
      const auto coarse = std::min(nb - 1, static_cast<std::size_t>(v * static_cast<double>(nb)));
      const auto fine = std::min(2 * nb - 1, static_cast<std::size_t>(v * static_cast<double>(2 * nb)));
      acc[coarse] += 1.0;
      acc[nb + fine] += 1.0;
    }
  });
  Histogram h;
  const double n = static_cast<double>(samples);
  for (std::size_t b = 0; b < nb; ++b) h.masses.push_back(counts[b] / n);
  h.max_atom = *std::max_element(h.masses.begin(), h.masses.end());
  h.max_atom_fine = *std::max_element(counts.begin() + static_cast<std::ptrdiff_t>(nb), counts.end()) / n;
  return h;
}

}  // namespace nillab
