#include "nillab/group/polynomial_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace nillab {

PolynomialMap::PolynomialMap(const std::vector<ExtScalar>& outputs, int first_input, int inputs,
                             std::span<const double> parameters)
    : inputs_(inputs) {
  if (inputs > 2 * kMaxDim + 2) throw std::invalid_argument("polynomial map: too many inputs");
  if (static_cast<int>(parameters.size()) < first_input)
    throw std::invalid_argument("polynomial map: missing parameter values");
  offsets_.push_back(0);
  for (const auto& poly : outputs) {
    // Bind parameters, merging terms that share the same input monomial.
    std::map<std::vector<Factor>, double, bool (*)(const std::vector<Factor>&, const std::vector<Factor>&)> merged(
        [](const std::vector<Factor>& a, const std::vector<Factor>& b) {
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Factor& x, const Factor& y) {
            return x.input != y.input ? x.input < y.input : x.exponent < y.exponent;
          });
        });
    for (const auto& [mono, coeff] : poly.terms()) {
      double c = coeff.to_double();
      std::vector<Factor> fs;
      for (const auto& [sym, e] : mono) {
        const int s = static_cast<int>(sym);
        if (s < first_input) {
          c *= std::pow(parameters[s], static_cast<int>(e));
        } else {
          if (s - first_input >= inputs) throw std::invalid_argument("polynomial map: symbol beyond inputs");
          fs.push_back({s - first_input, static_cast<int>(e)});
        }
      }
      merged[fs] += c;
    }
    for (const auto& [fs, c] : merged) {
      if (c == 0.0) continue;
      int degree = 0;
      for (const auto& f : fs) degree += f.exponent;
      max_degree_ = std::max(max_degree_, degree);
      terms_.push_back({c, static_cast<int>(factors_.size()), static_cast<int>(fs.size())});
      factors_.insert(factors_.end(), fs.begin(), fs.end());
    }
    offsets_.push_back(static_cast<int>(terms_.size()));
  }
}

double PolynomialMap::evaluate(const double* x, double* out) const {
  double worst = 0.0;
  for (int o = 0; o + 1 < static_cast<int>(offsets_.size()); ++o) {
    double sum = 0.0;
    double magnitude = 0.0;
    for (int t = offsets_[o]; t < offsets_[o + 1]; ++t) {
      const Term& term = terms_[t];
      double v = term.coeff;
      for (int f = term.first_factor; f < term.first_factor + term.factor_count; ++f) {
        const double b = x[factors_[f].input];
        switch (factors_[f].exponent) {
          case 1: v *= b; break;
          case 2: v *= b * b; break;
          case 3: v *= b * b * b; break;
          default: v *= std::pow(b, factors_[f].exponent);
        }
      }
      sum += v;
      magnitude += std::abs(v);
    }
    out[o] = sum;
    worst = std::max(worst, magnitude);
  }
  constexpr double unit = std::numeric_limits<double>::epsilon();
  return worst * unit * static_cast<double>(max_degree_ + 2);
}

}  // namespace nillab
