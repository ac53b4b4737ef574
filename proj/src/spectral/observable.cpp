#include "nillab/spectral/observable.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nillab {

namespace {

double parse_double(std::string_view s, std::string_view whole) {
  std::string text(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("malformed observable amplitude in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Observable Observable::normalized() const {
  std::map<std::vector<int>, std::complex<double>> merged;
  for (const auto& t : terms) merged[t.frequency] += t.amplitude;
  Observable out;
  for (const auto& [k, a] : merged)
    if (a != 0.0) out.terms.push_back({k, a});
  return out;
}

std::complex<double> Observable::operator()(const double* reduced) const {
  std::complex<double> sum = 0.0;
  for (const auto& t : terms) {
    double phase = 0.0;
    for (std::size_t i = 0; i < t.frequency.size(); ++i)
      if (t.frequency[i] != 0) phase += t.frequency[i] * reduced[i];
    sum += t.amplitude * e_of(phase);
  }
  return sum;
}

double Observable::norm2() const {
  double s = 0.0;
  for (const auto& t : normalized().terms) s += std::norm(t.amplitude);
  return s;
}

Observable::Term Observable::parse_term(std::string_view text, int dim) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("observable term '" + std::string(text) + "' needs 'k-vector:amplitude'");
  Term term;
  std::string_view ks = text.substr(0, colon);
  while (!ks.empty()) {
    auto comma = ks.find(',');
    std::string_view item = ks.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw std::invalid_argument("malformed frequency in observable '" + std::string(text) + "'");
    term.frequency.push_back(v);
    if (comma == std::string_view::npos) break;
    ks.remove_prefix(comma + 1);
  }
  if (static_cast<int>(term.frequency.size()) != dim)
    throw std::invalid_argument("observable '" + std::string(text) + "' has " + std::to_string(term.frequency.size()) +
                                " frequencies, system dimension is " + std::to_string(dim));
  std::string_view amp = text.substr(colon + 1);
  auto colon2 = amp.find(':');
  double re = parse_double(amp.substr(0, colon2), text);
  double im = colon2 == std::string_view::npos ? 0.0 : parse_double(amp.substr(colon2 + 1), text);
  term.amplitude = {re, im};
  return term;
}

std::string Observable::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.amplitude.real();
    if (t.amplitude.imag() != 0.0) os << (t.amplitude.imag() < 0 ? "-" : "+") << std::abs(t.amplitude.imag()) << "i";
    os << ")e(";
    for (std::size_t i = 0; i < t.frequency.size(); ++i) os << (i ? "," : "") << t.frequency[i];
    os << ")";
  }
  return first ? "0" : os.str();
}

}  // namespace nillab
