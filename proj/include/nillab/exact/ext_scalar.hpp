#pragma once

#include "nillab/exact/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nillab {

/// Names of the formal transcendentals of one system. Symbols are treated as
/// algebraically independent over Q.
class SymbolTable {
 public:
  explicit SymbolTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

using SymbolContext = std::shared_ptr<const SymbolTable>;

SymbolContext make_symbols(std::vector<std::string> names);

struct ContextMismatch : std::logic_error {
  ContextMismatch() : std::logic_error("scalars from different symbol contexts") {}
};

struct UnboundSymbol : std::invalid_argument {
  explicit UnboundSymbol(const std::string& name)
      : std::invalid_argument("unbound symbol '" + name + "'") {}
};

/// Element of Q[t_1, ..., t_r]. Zero coefficients are never stored, so
/// structural equality is equality of polynomials.
class ExtScalar {
 public:
  /// Sparse exponent vector: sorted (symbol index, exponent > 0) pairs.
  using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  using Terms = std::map<Monomial, Rational>;

  ExtScalar() = default;
  ExtScalar(int v) : ExtScalar(Rational(v)) {}
  ExtScalar(const Rational& v);

  static ExtScalar symbol(const SymbolContext& ctx, std::size_t index);
  static ExtScalar symbol(const SymbolContext& ctx, std::string_view name);
  static ExtScalar from_terms(SymbolContext ctx, Terms terms);

  const SymbolContext& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  std::optional<Rational> as_rational() const;
  Rational constant_term() const;
  /// Total degree; -1 for zero.
  int degree() const;

  std::string str() const;

  ExtScalar operator-() const;
  ExtScalar& operator+=(const ExtScalar& o);
  ExtScalar& operator-=(const ExtScalar& o);
  ExtScalar& operator*=(const ExtScalar& o);
  ExtScalar& operator*=(const Rational& o);
  ExtScalar& operator/=(const Rational& o);

  friend ExtScalar operator+(ExtScalar a, const ExtScalar& b) { return a += b; }
  friend ExtScalar operator-(ExtScalar a, const ExtScalar& b) { return a -= b; }
  friend ExtScalar operator*(const ExtScalar& a, const ExtScalar& b);
  friend ExtScalar operator*(ExtScalar a, const Rational& b) { return a *= b; }
  friend ExtScalar operator*(const Rational& b, ExtScalar a) { return a *= b; }
  friend ExtScalar operator/(ExtScalar a, const Rational& b) { return a /= b; }

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) { return a.terms_ == b.terms_; }

 private:
  void adopt_context(const SymbolContext& other);

  Terms terms_;
  SymbolContext ctx_;
};

/// Value of s with symbol values looked up by name.
double evaluate(const ExtScalar& s, const std::map<std::string, double>& assignment);
/// Value of s with symbol values given by symbol index.
double evaluate(const ExtScalar& s, std::span<const double> values);

/// One Rational vector per monomial occurring in v, in monomial order. The
/// Q-span of the slices is the smallest Q-defined subspace containing v.
std::vector<std::vector<Rational>> rational_slices(std::span<const ExtScalar> v);

/// Common symbol context of a set of scalars (null if none carries one).
SymbolContext common_context(std::span<const ExtScalar> v);

inline bool is_zero(const ExtScalar& s) { return s.is_zero(); }
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(double d) { return d == 0.0; }

}  // namespace nillab
