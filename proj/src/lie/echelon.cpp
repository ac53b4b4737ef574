#include "nillab/lie/echelon.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace nillab {

namespace {

bool row_is_rational(const Vector<ExtScalar>& row) {
  for (int i = 0; i < row.size(); ++i)
    if (!row[i].is_rational()) return false;
  return true;
}

// q with e == q * p, if q is rational.
std::optional<Rational> rational_quotient(const ExtScalar& e, const ExtScalar& p) {
  if (e.is_zero()) return Rational(0);
  const auto& [lead_mono, lead_coeff] = *p.terms().begin();
  auto it = e.terms().find(lead_mono);
  if (it == e.terms().end()) return std::nullopt;
  Rational q = it->second / lead_coeff;
  if (e.terms().size() != p.terms().size()) return std::nullopt;
  if (!(p * q == e)) return std::nullopt;
  return q;
}

ExtScalar divide_monomial(const ExtScalar& s, const std::map<std::uint32_t, std::uint32_t>& content) {
  ExtScalar::Terms terms;
  for (const auto& [mono, coeff] : s.terms()) {
    ExtScalar::Monomial reduced;
    for (const auto& [sym, e] : mono) {
      auto it = content.find(sym);
      std::uint32_t sub = it == content.end() ? 0 : it->second;
      if (e > sub) reduced.emplace_back(sym, e - sub);
    }
    terms.emplace(std::move(reduced), coeff);
  }
  return ExtScalar::from_terms(s.context(), std::move(terms));
}

void normalize_row(Vector<ExtScalar>& row, int pivot) {
  const ExtScalar p = row[pivot];
  if (row_is_rational(row)) {
    Rational inv = Rational(1) / *p.as_rational();
    for (int i = 0; i < row.size(); ++i) row[i] *= inv;
    return;
  }
  Vector<ExtScalar> quotients(row.size());
  bool rational_multiple = true;
  for (int i = 0; i < row.size() && rational_multiple; ++i) {
    auto q = rational_quotient(row[i], p);
    if (!q) {
      rational_multiple = false;
    } else {
      quotients[i] = ExtScalar(*q);
    }
  }
  if (rational_multiple) {
    row = quotients;
    return;
  }
  // Monomial content: minimal exponent of each symbol over all terms.
  std::map<std::uint32_t, std::uint32_t> content;
  bool first = true;
  for (int i = 0; i < row.size(); ++i) {
    for (const auto& [mono, coeff] : row[i].terms()) {
      std::map<std::uint32_t, std::uint32_t> here(mono.begin(), mono.end());
      if (first) {
        content = here;
        first = false;
        continue;
      }
      for (auto it = content.begin(); it != content.end();) {
        auto h = here.find(it->first);
        if (h == here.end()) {
          it = content.erase(it);
        } else {
          it->second = std::min(it->second, h->second);
          ++it;
        }
      }
    }
  }
  if (!content.empty()) {
    for (int i = 0; i < row.size(); ++i) row[i] = divide_monomial(row[i], content);
  }
  Rational scale = Rational(1) / row[pivot].terms().begin()->second;
  for (int i = 0; i < row.size(); ++i) row[i] *= scale;
}

// row <- pivot_value * row - row[col] * pivot_row
void eliminate(Vector<ExtScalar>& row, const Vector<ExtScalar>& pivot_row, int col) {
  if (row[col].is_zero()) return;
  const ExtScalar factor = row[col];
  const ExtScalar& pv = pivot_row[col];
  if (auto r = pv.as_rational(); r && *r == Rational(1)) {
    for (int i = 0; i < row.size(); ++i) {
      if (!pivot_row[i].is_zero()) row[i] -= factor * pivot_row[i];
    }
  } else {
    for (int i = 0; i < row.size(); ++i) {
      ExtScalar v = row[i].is_zero() ? ExtScalar() : pv * row[i];
      if (!pivot_row[i].is_zero()) v -= factor * pivot_row[i];
      row[i] = std::move(v);
    }
  }
  row[col] = ExtScalar();
}

}  // namespace

EchelonForm echelon_form(std::vector<Vector<ExtScalar>> vectors) {
  EchelonForm form;
  if (vectors.empty()) return form;
  const int dim = static_cast<int>(vectors.front().size());
  std::size_t next = 0;
  for (int col = 0; col < dim && next < vectors.size(); ++col) {
    std::size_t found = vectors.size();
    for (std::size_t r = next; r < vectors.size(); ++r) {
      if (!vectors[r][col].is_zero()) {
        found = r;
        break;
      }
    }
    if (found == vectors.size()) continue;
    std::swap(vectors[next], vectors[found]);
    normalize_row(vectors[next], col);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (r == next || vectors[r][col].is_zero()) continue;
      eliminate(vectors[r], vectors[next], col);
      if (r < next) {
        // Keep rows above in normalized form with their own pivots.
        normalize_row(vectors[r], form.pivots[r]);
      }
    }
    form.pivots.push_back(col);
    ++next;
  }
  vectors.resize(next);
  form.rows = std::move(vectors);
  return form;
}

bool reduce_against(const EchelonForm& form, Vector<ExtScalar>& v) {
  for (std::size_t r = 0; r < form.rows.size(); ++r) eliminate(v, form.rows[r], form.pivots[r]);
  return is_zero_vector(v);
}

bool is_rational_form(const EchelonForm& form) {
  for (const auto& row : form.rows)
    if (!row_is_rational(row)) return false;
  return true;
}

std::vector<Vector<Rational>> rational_nullspace(const Matrix<Rational>& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  std::vector<Vector<ExtScalar>> vecs;
  for (int r = 0; r < rows; ++r) {
    Vector<ExtScalar> v(cols);
    for (int c = 0; c < cols; ++c) v[c] = ExtScalar(m(r, c));
    vecs.push_back(v);
  }
  EchelonForm form = echelon_form(vecs);
  std::vector<bool> is_pivot(cols, false);
  for (int p : form.pivots) is_pivot[p] = true;
  std::vector<Vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector<Rational> x = zero_vector<Rational>(cols);
    x[free] = Rational(1);
    for (std::size_t r = 0; r < form.rows.size(); ++r) {
      x[form.pivots[r]] = -*form.rows[r][free].as_rational();
    }
    basis.push_back(x);
  }
  return basis;
}

std::vector<BigInt> primitive_integer_vector(const Vector<Rational>& v) {
  BigInt den = 1;
  for (int i = 0; i < v.size(); ++i) den = lcm(den, v[i].denominator());
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (int i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(den);
    out[i] = scaled.numerator();
    g = gcd(g, out[i] < 0 ? BigInt(-out[i]) : out[i]);
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& x : out) {
    if (x != 0) {
      sign = x < 0 ? -1 : 1;
      break;
    }
  }
  for (auto& x : out) x = x / g * sign;
  return out;
}

}  // namespace nillab
