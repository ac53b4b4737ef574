#pragma once

#include "nillab/spectral/observable.hpp"
#include "nillab/structure/system.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nillab {

/// Value of a catalog parameter: an exact rational substituted into the
/// system, or a formal symbol carrying a numeric value for sampling.
struct ParamValue {
  std::optional<Rational> exact;
  double value = 0.0;

  static ParamValue rational(const Rational& r) { return {r, r.to_double()}; }
  static ParamValue symbolic(double v) { return {std::nullopt, v}; }
  /// "p/q" or an integer is exact; "sym" keeps the default value;
  /// "sym:0.61803" gives a symbolic parameter with that value.
  static ParamValue parse(const std::string& text, double default_value);
};

using ParamAssignment = std::map<std::string, ParamValue>;

struct ParamSpec {
  std::string name;
  double default_value;
  std::string meaning;
};

struct NamedObservable {
  std::string name;
  Observable f;
  std::string projection_verdict;  // expected verdict on the discrete factor
  std::string complement_verdict;  // expected verdict on its complement
};

/// Known structural answers for the default (all-symbolic) parameters.
/// Subspaces are given by rational spanning vectors.
struct ExpectedStructure {
  std::vector<std::vector<Rational>> tau_commutator;
  std::vector<std::vector<Rational>> discrete_factor;  // J([tau, G], Gamma)
  std::vector<std::vector<Rational>> leibman;
  std::vector<std::vector<Rational>> derived_leibman;   // [H, H]
  bool ergodic;
  std::vector<long> witness;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<std::string> coordinate_names;
  std::vector<ParamSpec> params;
  ExpectedStructure expected;
  std::vector<NamedObservable> observables;
};

const std::vector<CatalogEntry>& catalog_list();
const CatalogEntry& catalog_entry(const std::string& name);

/// Every parameter must be assigned; throws std::invalid_argument otherwise.
AffineNilsystem catalog_build(const std::string& name, const ParamAssignment& params);

/// Symbolic parameters at their default numeric values.
ParamAssignment default_params(const std::string& name);

}  // namespace nillab
