#include "nillab/exact/ext_scalar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nillab {

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty symbol name");
    if (!seen.insert(n).second) throw std::invalid_argument("symbol '" + n + "' declared twice");
  }
}

std::optional<std::size_t> SymbolTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

SymbolContext make_symbols(std::vector<std::string> names) {
  return std::make_shared<const SymbolTable>(std::move(names));
}

namespace {

ExtScalar::Monomial multiply_monomials(const ExtScalar::Monomial& a, const ExtScalar::Monomial& b) {
  ExtScalar::Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

ExtScalar::ExtScalar(const Rational& v) {
  if (!v.is_zero()) terms_.emplace(Monomial{}, v);
}

ExtScalar ExtScalar::symbol(const SymbolContext& ctx, std::size_t index) {
  if (!ctx || index >= ctx->size()) throw std::out_of_range("symbol index out of range");
  ExtScalar s;
  s.ctx_ = ctx;
  s.terms_.emplace(Monomial{{static_cast<std::uint32_t>(index), 1u}}, Rational(1));
  return s;
}

ExtScalar ExtScalar::symbol(const SymbolContext& ctx, std::string_view name) {
  auto idx = ctx ? ctx->index_of(name) : std::nullopt;
  if (!idx) throw UnboundSymbol(std::string(name));
  return symbol(ctx, *idx);
}

ExtScalar ExtScalar::from_terms(SymbolContext ctx, Terms terms) {
  ExtScalar s;
  s.ctx_ = std::move(ctx);
  for (auto& [mono, coeff] : terms) {
    if (coeff.is_zero()) continue;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i].second == 0) throw std::invalid_argument("zero exponent in monomial");
      if (i > 0 && mono[i - 1].first >= mono[i].first)
        throw std::invalid_argument("monomial symbols must be strictly increasing");
      if (!s.ctx_ || mono[i].first >= s.ctx_->size())
        throw std::out_of_range("monomial refers to an undeclared symbol");
    }
    s.terms_.emplace(mono, coeff);
  }
  return s;
}

void ExtScalar::adopt_context(const SymbolContext& other) {
  if (!other) return;
  if (!ctx_) {
    ctx_ = other;
  } else if (ctx_ != other) {
    throw ContextMismatch();
  }
}

bool ExtScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::optional<Rational> ExtScalar::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return constant_term();
}

Rational ExtScalar::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int ExtScalar::degree() const {
  int d = -1;
  for (const auto& [mono, c] : terms_) {
    int deg = 0;
    for (const auto& [sym, e] : mono) deg += static_cast<int>(e);
    d = std::max(d, deg);
  }
  return d;
}

std::string ExtScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    Rational c = coeff;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    bool unit = mono.empty() ? false : (c == Rational(1) || c == Rational(-1));
    if (!unit) {
      os << (c.is_integer() ? c.numerator().str() : c.str());
    } else if (c.sign() < 0) {
      os << "-";
    }
    bool need_star = !unit;
    for (const auto& [sym, e] : mono) {
      if (need_star) os << "*";
      need_star = true;
      os << (ctx_ ? ctx_->name(sym) : "t" + std::to_string(sym + 1));
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

ExtScalar ExtScalar::operator-() const {
  ExtScalar r = *this;
  for (auto& [mono, coeff] : r.terms_) coeff = -coeff;
  return r;
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& o) {
  adopt_context(o.ctx_);
  for (const auto& [mono, coeff] : o.terms_) {
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& o) {
  adopt_context(o.ctx_);
  for (const auto& [mono, coeff] : o.terms_) {
    auto [it, inserted] = terms_.emplace(mono, -coeff);
    if (!inserted) {
      it->second -= coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ExtScalar operator*(const ExtScalar& a, const ExtScalar& b) {
  ExtScalar out;
  out.ctx_ = a.ctx_;
  out.adopt_context(b.ctx_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto mono = multiply_monomials(ma, mb);
      Rational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(std::move(mono), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

ExtScalar& ExtScalar::operator*=(const ExtScalar& o) { return *this = *this * o; }

ExtScalar& ExtScalar::operator*=(const Rational& o) {
  if (o.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= o;
  return *this;
}

ExtScalar& ExtScalar::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  for (auto& [mono, coeff] : terms_) coeff /= o;
  return *this;
}

double evaluate(const ExtScalar& s, std::span<const double> values) {
  double total = 0.0;
  for (const auto& [mono, coeff] : s.terms()) {
    double term = coeff.to_double();
    for (const auto& [sym, e] : mono) {
      if (sym >= values.size()) {
        throw UnboundSymbol(s.context() ? s.context()->name(sym) : "t" + std::to_string(sym + 1));
      }
      for (std::uint32_t k = 0; k < e; ++k) term *= values[sym];
    }
    total += term;
  }
  return total;
}

double evaluate(const ExtScalar& s, const std::map<std::string, double>& assignment) {
  std::vector<double> values;
  if (s.context()) {
    values.resize(s.context()->size(), 0.0);
    std::vector<bool> needed(s.context()->size(), false);
    for (const auto& [mono, coeff] : s.terms())
      for (const auto& [sym, e] : mono) needed[sym] = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!needed[i]) continue;
      auto it = assignment.find(s.context()->name(i));
      if (it == assignment.end()) throw UnboundSymbol(s.context()->name(i));
      values[i] = it->second;
    }
  }
  return evaluate(s, values);
}

SymbolContext common_context(std::span<const ExtScalar> v) {
  SymbolContext ctx;
  for (const auto& s : v) {
    if (!s.context()) continue;
    if (!ctx) {
      ctx = s.context();
    } else if (ctx != s.context()) {
      throw ContextMismatch();
    }
  }
  return ctx;
}

std::vector<std::vector<Rational>> rational_slices(std::span<const ExtScalar> v) {
  common_context(v);
  std::map<ExtScalar::Monomial, std::vector<Rational>> slices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& [mono, coeff] : v[i].terms()) {
      auto& slice = slices[mono];
      if (slice.empty()) slice.assign(v.size(), Rational(0));
      slice[i] = coeff;
    }
  }
  std::vector<std::vector<Rational>> out;
  out.reserve(slices.size());
  for (auto& [mono, slice] : slices) out.push_back(std::move(slice));
  return out;
}

}  // namespace nillab
