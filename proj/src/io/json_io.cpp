#include "nillab/io/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nillab {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing field '" + key + "'");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<int>();
}

Json matrix_to_json(const Matrix<Rational>& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(to_json(a(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix<Rational> matrix_from_json(const Json& j, int m, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) throw FormatError(where + ": expected " + std::to_string(m) + " rows");
  Matrix<Rational> a(m, m);
  for (int r = 0; r < m; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw FormatError(where + ": row " + std::to_string(r + 1) + " needs " + std::to_string(m) + " entries");
    for (int c = 0; c < m; ++c)
      a(r, c) = rational_from_json(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r + 1) + "][" + std::to_string(c + 1) + "]");
  }
  return a;
}

Json generator_to_json(const AffineMap& g, std::size_t symbols) {
  Json t = Json::array();
  for (int i = 0; i < g.translation.coords.size(); ++i) t.push_back(to_json(g.translation.coords[i], symbols));
  return {{"automorphism", matrix_to_json(g.automorphism.matrix())}, {"translation", t}};
}

AffineMap generator_from_json(const Json& j, const AlgebraPtr& alg, const SymbolContext& ctx, const std::string& where) {
  const int m = alg->dim();
  UnipotentAutomorphism a = j.contains("automorphism")
                                ? UnipotentAutomorphism(alg, matrix_from_json(j["automorphism"], m, where + ".automorphism"))
                                : UnipotentAutomorphism::identity(alg);
  const Json& t = field(j, "translation", where);
  if (!t.is_array() || static_cast<int>(t.size()) != m)
    throw FormatError(where + ".translation: expected " + std::to_string(m) + " coordinates");
  ExactElement g{zero_vector<ExtScalar>(m)};
  for (int i = 0; i < m; ++i)
    g.coords[i] = ext_from_json(t[static_cast<std::size_t>(i)], ctx, where + ".translation[" + std::to_string(i + 1) + "]");
  return {std::move(a), std::move(g)};
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (!j.is_string()) throw FormatError(where + ": expected a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
}

Json to_json(const ExtScalar& s, std::size_t symbols) {
  Json records = Json::array();
  for (const auto& [mono, coeff] : s.terms()) {
    std::vector<unsigned> exps(symbols, 0);
    for (const auto& [sym, e] : mono) exps.at(sym) = e;
    records.push_back({{"monomial", exps}, {"coeff", to_json(coeff)}});
  }
  return records;
}

ExtScalar ext_from_json(const Json& j, const SymbolContext& ctx, const std::string& where) {
  if (j.is_string() || j.is_number_integer()) return ExtScalar(rational_from_json(j, where));
  if (!j.is_array()) throw FormatError(where + ": expected a list of monomial records");
  const std::size_t r = ctx ? ctx->size() : 0;
  ExtScalar::Terms terms;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::string at = where + "[" + std::to_string(n) + "]";
    const Json& mono = field(j[n], "monomial", at);
    if (!mono.is_array() || mono.size() != r) throw FormatError(at + ".monomial: expected " + std::to_string(r) + " exponents");
    ExtScalar::Monomial key;
    for (std::size_t s = 0; s < r; ++s) {
      int e = int_from_json(mono[s], at + ".monomial");
      if (e < 0) throw FormatError(at + ".monomial: negative exponent");
      if (e > 0) key.emplace_back(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(e));
    }
    terms[key] += rational_from_json(field(j[n], "coeff", at), at + ".coeff");
  }
  return ExtScalar::from_terms(ctx, std::move(terms));
}

Json to_json(const NilLieAlgebra& algebra) {
  Json brackets = Json::array();
  for (const auto& b : algebra.brackets()) {
    Json coeffs = Json::array();
    for (const auto& [k, c] : b.coeffs) coeffs.push_back(Json::array({k + 1, to_json(c)}));
    brackets.push_back({{"i", b.i + 1}, {"j", b.j + 1}, {"coeffs", coeffs}});
  }
  return {{"dim", algebra.dim()}, {"step", algebra.step()}, {"brackets", brackets}};
}

AlgebraPtr algebra_from_json(const Json& j) {
  const int dim = int_from_json(field(j, "dim", "algebra"), "algebra.dim");
  if (dim < 1 || dim > kMaxDim) throw FormatError("algebra.dim must be in 1.." + std::to_string(kMaxDim));
  const int step = j.contains("step") ? int_from_json(j["step"], "algebra.step") : 0;
  std::vector<NilLieAlgebra::BracketSpec> specs;
  if (j.contains("brackets")) {
    const Json& bs = j["brackets"];
    if (!bs.is_array()) throw FormatError("algebra.brackets: expected a list");
    for (std::size_t n = 0; n < bs.size(); ++n) {
      const std::string at = "algebra.brackets[" + std::to_string(n) + "]";
      auto index = [&](const Json& v, const std::string& w) {
        int i = int_from_json(v, w);
        if (i < 1 || i > dim) throw FormatError(w + ": index out of range 1.." + std::to_string(dim));
        return i - 1;
      };
      NilLieAlgebra::BracketSpec spec{index(field(bs[n], "i", at), at + ".i"), index(field(bs[n], "j", at), at + ".j"), {}};
      const Json& coeffs = field(bs[n], "coeffs", at);
      if (!coeffs.is_array()) throw FormatError(at + ".coeffs: expected a list of [k, \"p/q\"] pairs");
      for (const auto& kc : coeffs) {
        if (!kc.is_array() || kc.size() != 2) throw FormatError(at + ".coeffs: expected [k, \"p/q\"] pairs");
        spec.coeffs.emplace_back(index(kc[0], at + ".coeffs.k"), rational_from_json(kc[1], at + ".coeffs"));
      }
      specs.push_back(std::move(spec));
    }
  }
  return std::make_shared<const NilLieAlgebra>(dim, step, specs);
}

Json to_json(const AffineNilsystem& sys) {
  const std::size_t r = sys.symbols() ? sys.symbols()->size() : 0;
  Json symbols = Json::array(), values = Json::object();
  for (std::size_t s = 0; s < r; ++s) {
    symbols.push_back(sys.symbols()->name(s));
    values[sys.symbols()->name(s)] = sys.values()[s];
  }
  Json out = generator_to_json(sys.generator(0), r);
  out["algebra"] = to_json(sys.algebra());
  out["symbols"] = symbols;
  out["values"] = values;
  if (sys.has_second_generator()) out["second_generator"] = generator_to_json(sys.generator(1), r);
  return out;
}

AffineNilsystem system_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const Json& alg_field = field(j, "algebra", "system");
  AlgebraPtr alg = alg_field.is_string() ? algebra_from_json(read_json_file(base_dir / alg_field.get<std::string>()))
                                         : algebra_from_json(alg_field);
  std::vector<std::string> names;
  if (j.contains("symbols")) {
    if (!j["symbols"].is_array()) throw FormatError("system.symbols: expected a list of names");
    for (const auto& n : j["symbols"]) {
      if (!n.is_string()) throw FormatError("system.symbols: expected strings");
      names.push_back(n.get<std::string>());
    }
  }
  SymbolContext ctx = names.empty() ? nullptr : make_symbols(names);
  std::vector<double> values;
  for (const auto& n : names) {
    if (!j.contains("values") || !j["values"].contains(n) || !j["values"][n].is_number())
      throw FormatError("system.values: missing numeric value for symbol '" + n + "'");
    values.push_back(j["values"][n].get<double>());
  }
  AffineMap first = generator_from_json(j, alg, ctx, "system");
  std::optional<AffineMap> second;
  if (j.contains("second_generator")) second = generator_from_json(j["second_generator"], alg, ctx, "system.second_generator");
  return AffineNilsystem(alg, ctx, values, std::move(first), std::move(second));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

AffineNilsystem load_system_file(const std::filesystem::path& path) {
  return system_from_json(read_json_file(path), path.parent_path());
}

}  // namespace nillab
