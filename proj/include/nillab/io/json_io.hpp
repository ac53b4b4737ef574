#pragma once

#include "nillab/structure/system.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace nillab {

struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::json;

/// "p/q" (or "p"); numbers that are integers are accepted on input.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

/// List of {"monomial": [e_1, ..., e_r], "coeff": "p/q"} records. A bare
/// rational is accepted on input as a constant.
Json to_json(const ExtScalar& s, std::size_t symbols);
ExtScalar ext_from_json(const Json& j, const SymbolContext& ctx, const std::string& where);

/// {"dim", "step", "brackets": [{"i", "j", "coeffs": [[k, "p/q"], ...]}]},
/// with 1-based basis indices.
Json to_json(const NilLieAlgebra& algebra);
AlgebraPtr algebra_from_json(const Json& j);

/// {"algebra": object or relative path, "symbols": [...], "values": {name: x},
///  "automorphism": m x m "p/q" rows, "translation": m ExtScalar records,
///  "second_generator": {"automorphism", "translation"}}.
Json to_json(const AffineNilsystem& sys);
AffineNilsystem system_from_json(const Json& j, const std::filesystem::path& base_dir = {});

Json read_json_file(const std::filesystem::path& path);
AffineNilsystem load_system_file(const std::filesystem::path& path);

}  // namespace nillab
