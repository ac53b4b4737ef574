#include "nillab/lie/subspace.hpp"

#include <stdexcept>

namespace nillab {

namespace {

std::vector<Vector<ExtScalar>> lift(const std::vector<Vector<Rational>>& vs) {
  std::vector<Vector<ExtScalar>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(convert<ExtScalar>(v));
  return out;
}

}  // namespace

Subspace::Subspace(AlgebraPtr algebra, std::vector<Vector<ExtScalar>> spanning) : algebra_(std::move(algebra)) {
  for (const auto& v : spanning)
    if (v.size() != algebra_->dim()) throw std::invalid_argument("subspace: vector dimension mismatch");
  std::vector<Vector<ExtScalar>> nonzero;
  for (auto& v : spanning)
    if (!is_zero_vector(v)) nonzero.push_back(std::move(v));
  form_ = echelon_form(std::move(nonzero));
  compute_flags();
}

Subspace::Subspace(AlgebraPtr algebra, const std::vector<Vector<Rational>>& spanning)
    : Subspace(std::move(algebra), lift(spanning)) {}

Subspace Subspace::zero(AlgebraPtr algebra) { return Subspace(std::move(algebra), std::vector<Vector<ExtScalar>>{}); }

Subspace Subspace::full(AlgebraPtr algebra) { return trailing(std::move(algebra), 0); }

Subspace Subspace::trailing(AlgebraPtr algebra, int first) {
  std::vector<Vector<ExtScalar>> vs;
  for (int i = first; i < algebra->dim(); ++i) vs.push_back(unit_vector<ExtScalar>(algebra->dim(), i));
  return Subspace(std::move(algebra), std::move(vs));
}

void Subspace::compute_flags() {
  rational_ = is_rational_form(form_);
  const int m = algebra_->dim();
  ideal_ = true;
  for (const auto& b : form_.rows) {
    for (int i = 0; i < m && ideal_; ++i) {
      if (!contains(algebra_->bracket<ExtScalar>(b, unit_vector<ExtScalar>(m, i)))) ideal_ = false;
    }
  }
  subalgebra_ = ideal_;
  if (!subalgebra_) {
    subalgebra_ = true;
    for (std::size_t a = 0; a < form_.rows.size() && subalgebra_; ++a)
      for (std::size_t b = a + 1; b < form_.rows.size() && subalgebra_; ++b)
        if (!contains(algebra_->bracket<ExtScalar>(form_.rows[a], form_.rows[b]))) subalgebra_ = false;
  }
}

std::vector<Vector<Rational>> Subspace::rational_basis() const {
  if (!rational_) throw std::logic_error("subspace is not defined over Q");
  std::vector<Vector<Rational>> out;
  for (const auto& row : form_.rows) {
    Vector<Rational> r(row.size());
    for (int i = 0; i < row.size(); ++i) r[i] = *row[i].as_rational();
    out.push_back(r);
  }
  return out;
}

std::optional<int> Subspace::trailing_start() const {
  const int m = algebra_->dim();
  const int start = m - dim();
  if (!rational_) return std::nullopt;
  for (int r = 0; r < dim(); ++r) {
    if (form_.pivots[r] != start + r) return std::nullopt;
    for (int c = 0; c < m; ++c) {
      auto v = form_.rows[r][c].as_rational();
      if (*v != Rational(c == start + r ? 1 : 0)) return std::nullopt;
    }
  }
  return start;
}

bool Subspace::contains(const Vector<ExtScalar>& v) const {
  if (v.size() != algebra_->dim()) throw std::invalid_argument("subspace: vector dimension mismatch");
  Vector<ExtScalar> copy = v;
  return reduce_against(form_, copy);
}

bool Subspace::contains(const Vector<Rational>& v) const { return contains(convert<ExtScalar>(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  auto vs = basis();
  for (const auto& b : other.basis()) vs.push_back(b);
  return Subspace(algebra_, std::move(vs));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && a.contains(b);
}

std::string vector_string(const Vector<ExtScalar>& v) {
  std::string out = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + ")";
}

std::string vector_string(const Vector<Rational>& v) {
  std::string out = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].is_integer() ? v[i].numerator().str() : v[i].str();
  }
  return out + ")";
}

std::vector<std::string> Subspace::basis_strings() const {
  std::vector<std::string> out;
  for (const auto& b : basis()) out.push_back(vector_string(b));
  return out;
}

}  // namespace nillab
