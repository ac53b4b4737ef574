#pragma once

#include "nillab/exact/eigen_support.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace nillab {

/// Trigonometric polynomial f(x) = sum_k a_k e(<k, red(x)>) in the
/// second-kind coordinates of the fundamental-domain representative.
struct Observable {
  struct Term {
    std::vector<int> frequency;
    std::complex<double> amplitude;
  };
  std::vector<Term> terms;

  int dim() const { return terms.empty() ? 0 : static_cast<int>(terms.front().frequency.size()); }
  bool empty() const { return terms.empty(); }

  /// Merges equal frequencies and drops zero amplitudes.
  Observable normalized() const;

  std::complex<double> operator()(const double* reduced) const;

  /// L^2 norm squared, sum |a_k|^2.
  double norm2() const;

  /// "k1,k2,...:re[:im]" (one term).
  static Term parse_term(std::string_view text, int dim);
  std::string str() const;

  static Observable character(std::vector<int> frequency, std::complex<double> amplitude = 1.0) {
    return Observable{{Term{std::move(frequency), amplitude}}};
  }
  friend Observable operator+(Observable a, const Observable& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
};

/// e(t) = exp(2 pi i t).
inline std::complex<double> e_of(double t) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::polar(1.0, two_pi * (t - std::floor(t)));
}

}  // namespace nillab
