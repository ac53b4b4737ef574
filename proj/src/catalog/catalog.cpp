#include "nillab/catalog/catalog.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nillab {

namespace {

using Vec = std::vector<Rational>;

Vec v(std::initializer_list<int> xs) {
  Vec out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

Observable ch(std::vector<int> k) { return Observable::character(std::move(k)); }

Matrix<Rational> skew_matrix() {
  Matrix<Rational> m(2, 2);
  m << Rational(1), Rational(0), Rational(1), Rational(1);
  return m;
}

// Resolves parameters to ExtScalars: exact ones are substituted, symbolic
// ones become symbols of a fresh context in declaration order.
struct Resolved {
  SymbolContext symbols;
  std::vector<double> values;
  std::map<std::string, ExtScalar> scalars;
};

Resolved resolve(const CatalogEntry& entry, const ParamAssignment& params) {
  for (const auto& [name, value] : params) {
    bool known = false;
    for (const auto& p : entry.params) known = known || p.name == name;
    if (!known) throw std::invalid_argument(entry.name + ": unknown parameter '" + name + "'");
  }
  std::vector<std::string> names;
  Resolved out;
  for (const auto& p : entry.params) {
    auto it = params.find(p.name);
    if (it == params.end()) throw std::invalid_argument(entry.name + ": parameter '" + p.name + "' is not assigned");
    if (!it->second.exact) {
      names.push_back(p.name);
      out.values.push_back(it->second.value);
    }
  }
  if (!names.empty()) out.symbols = make_symbols(names);
  for (const auto& p : entry.params) {
    const ParamValue& value = params.at(p.name);
    out.scalars[p.name] = value.exact ? ExtScalar(*value.exact) : ExtScalar::symbol(out.symbols, p.name);
  }
  return out;
}

ExactElement element(std::initializer_list<ExtScalar> coords) {
  Vector<ExtScalar> c(static_cast<int>(coords.size()));
  int i = 0;
  for (const auto& x : coords) c[i++] = x;
  return {c};
}

using Builder = std::function<AffineNilsystem(const Resolved&)>;

struct Registry {
  std::vector<CatalogEntry> entries;
  std::vector<Builder> builders;
};

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double silver = std::sqrt(2.0) - 1.0;
    const double bronze = std::sqrt(3.0) - 1.0;
    const char* D = "discrete";
    const char* L = "lebesgue-like";

    r.entries.push_back(
        {"skew_torus_nonergodic",
         "T(x, y) = (x, x + y) on the 2-torus",
         {"x", "y"},
         {},
         {{v({0, 1})}, {v({0, 1})}, {v({0, 1})}, {}, false, {1, 0}},
         {{"e(x)+e(y)", ch({1, 0}) + ch({0, 1}), D, L},
          {"e(2x)+e(2y)", ch({2, 0}) + ch({0, 2}), D, L},
          {"e(x)+e(x+y)", ch({1, 0}) + ch({1, 1}), D, L},
          {"e(3x)+e(-y)", ch({3, 0}) + ch({0, -1}), D, L},
          {"e(x)+e(2x)+e(y)", ch({1, 0}) + ch({2, 0}) + ch({0, 1}), D, L},
          {"e(x)+e(y)+e(x-y)", ch({1, 0}) + ch({0, 1}) + ch({1, -1}), D, L}}});
    r.builders.push_back([](const Resolved&) {
      auto alg = NilLieAlgebra::abelian(2);
      return AffineNilsystem(alg, nullptr, {}, {UnipotentAutomorphism(alg, skew_matrix()), element({0, 0})});
    });

    r.entries.push_back({"skew_torus_ergodic",
                         "T(x, y) = (x + alpha, x + y) on the 2-torus",
                         {"x", "y"},
                         {{"alpha", golden, "rotation of the base circle"}},
                         {{v({0, 1})}, {v({0, 1})}, {v({1, 0}), v({0, 1})}, {}, true, {}},
                         {{"e(x)+e(y)", ch({1, 0}) + ch({0, 1}), D, L}}});
    r.builders.push_back([](const Resolved& p) {
      auto alg = NilLieAlgebra::abelian(2);
      return AffineNilsystem(alg, p.symbols, p.values,
                             {UnipotentAutomorphism(alg, skew_matrix()), element({p.scalars.at("alpha"), 0})});
    });

    r.entries.push_back({"rot_torus",
                         "rotation x -> x + alpha on the circle",
                         {"x"},
                         {{"alpha", silver, "rotation number"}},
                         {{}, {}, {v({1})}, {}, true, {}},
                         {{"e(x)", ch({1}), D, "zero"}}});
    r.builders.push_back([](const Resolved& p) {
      auto alg = NilLieAlgebra::abelian(1);
      return AffineNilsystem(alg, p.symbols, p.values,
                             {UnipotentAutomorphism::identity(alg), element({p.scalars.at("alpha")})});
    });

    r.entries.push_back({"heisenberg3",
                         "translation by psi(alpha, beta, 0) on the Heisenberg nilmanifold",
                         {"x", "y", "z"},
                         {{"alpha", silver, "first horizontal coordinate"}, {"beta", golden, "second horizontal coordinate"}},
                         {{v({0, 0, 1})}, {v({0, 0, 1})}, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}, {v({0, 0, 1})}, true, {}},
                         {{"e(x)+e(z)", ch({1, 0, 0}) + ch({0, 0, 1}), D, L},
                          {"e(y)+e(z)", ch({0, 1, 0}) + ch({0, 0, 1}), D, L},
                          {"e(x+y)+e(2z)", ch({1, 1, 0}) + ch({0, 0, 2}), D, L},
                          {"e(x)+e(y)+e(-z)", ch({1, 0, 0}) + ch({0, 1, 0}) + ch({0, 0, -1}), D, L},
                          {"e(2x)+e(x+z)", ch({2, 0, 0}) + ch({1, 0, 1}), D, L},
                          {"e(-y)+e(y+z)", ch({0, -1, 0}) + ch({0, 1, 1}), D, L}}});
    r.builders.push_back([](const Resolved& p) {
      auto alg = heisenberg3_algebra();
      return AffineNilsystem(alg, p.symbols, p.values,
                             {UnipotentAutomorphism::identity(alg), element({p.scalars.at("alpha"), p.scalars.at("beta"), 0})});
    });

    // Basis (E12, E23, E34, E13, E24, E14); tau has (1,3) = y_tau and
    // (2,3) = u_tau, i.e. tau = psi(0, u_tau, 0, y_tau, 0, 0).
    r.entries.push_back({"heisenberg4",
                         "left translation by tau on 4x4 unipotent matrices modulo integer matrices",
                         {"x", "u", "w", "y", "v", "z"},
                         {{"y_tau", bronze, "entry (1,3) of tau"}, {"u_tau", silver, "entry (2,3) of tau"}},
                         {{v({0, 0, 0, 1, 0, 0}), v({0, 0, 0, 0, 1, 0}), v({0, 0, 0, 0, 0, 1})},
                          {v({0, 0, 0, 1, 0, 0}), v({0, 0, 0, 0, 1, 0}), v({0, 0, 0, 0, 0, 1})},
                          {v({0, 1, 0, 0, 0, 0}), v({0, 0, 0, 1, 0, 0}), v({0, 0, 0, 0, 1, 0}), v({0, 0, 0, 0, 0, 1})},
                          {},
                          false,
                          {1, 0, 0}},
                         {{"e(x)+e(z)", ch({1, 0, 0, 0, 0, 0}) + ch({0, 0, 0, 0, 0, 1}), D, L}}});
    r.builders.push_back([](const Resolved& p) {
      auto alg = unitriangular4_algebra();
      return AffineNilsystem(
          alg, p.symbols, p.values,
          {UnipotentAutomorphism::identity(alg), element({0, p.scalars.at("u_tau"), 0, p.scalars.at("y_tau"), 0, 0})});
    });

    r.entries.push_back({"z2_skew",
                         "commuting pair T1(x, y) = (x + alpha, x + y), T2(x, y) = (x, y + beta)",
                         {"x", "y"},
                         {{"alpha", silver, "base rotation of T1"}, {"beta", golden, "fiber rotation of T2"}},
                         {{v({0, 1})}, {v({0, 1})}, {v({1, 0}), v({0, 1})}, {}, true, {}},
                         {{"e(y)", ch({0, 1}), "zero", L}, {"e(2y)", ch({0, 2}), "zero", L}}});
    r.builders.push_back([](const Resolved& p) {
      auto alg = NilLieAlgebra::abelian(2);
      AffineMap t1{UnipotentAutomorphism(alg, skew_matrix()), element({p.scalars.at("alpha"), 0})};
      AffineMap t2{UnipotentAutomorphism::identity(alg), element({0, p.scalars.at("beta")})};
      return AffineNilsystem(alg, p.symbols, p.values, t1, t2);
    });
    return r;
  }();
  return reg;
}

}  // namespace

ParamValue ParamValue::parse(const std::string& text, double default_value) {
  if (text == "sym") return symbolic(default_value);
  if (text.rfind("sym:", 0) == 0) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(4), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() - 4) throw std::invalid_argument("malformed symbolic value '" + text + "'");
    return symbolic(v);
  }
  return rational(Rational::parse(text));
}

const std::vector<CatalogEntry>& catalog_list() { return registry().entries; }

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : registry().entries)
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog system '" + name + "'");
}

AffineNilsystem catalog_build(const std::string& name, const ParamAssignment& params) {
  const auto& reg = registry();
  for (std::size_t i = 0; i < reg.entries.size(); ++i)
    if (reg.entries[i].name == name) return reg.builders[i](resolve(reg.entries[i], params));
  throw std::invalid_argument("unknown catalog system '" + name + "'");
}

ParamAssignment default_params(const std::string& name) {
  ParamAssignment out;
  for (const auto& p : catalog_entry(name).params) out[p.name] = ParamValue::symbolic(p.default_value);
  return out;
}

}  // namespace nillab
