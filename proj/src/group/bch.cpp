#include "nillab/group/bch.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace nillab {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= Rational(i);
  return f;
}

// Sum over decompositions of word[pos..] into blocks X^r Y^s (r + s >= 1) of
// (-1)^(n-1) / n / prod(r! s!), where n counts all blocks including `blocks`.
Rational dynkin_sum(const std::string& word, std::size_t pos, int blocks, const Rational& weight) {
  if (pos == word.size()) {
    Rational c = weight / Rational(blocks);
    return blocks % 2 == 1 ? c : -c;
  }
  Rational total(0);
  std::size_t xrun = 0;
  while (pos + xrun < word.size() && word[pos + xrun] == 'X') ++xrun;
  for (std::size_t r = 0; r <= xrun; ++r) {
    if (r < xrun) {
      if (r == 0) continue;
      total += dynkin_sum(word, pos + r, blocks + 1, weight / factorial(static_cast<int>(r)));
      continue;
    }
    std::size_t yrun = 0;
    while (pos + r + yrun < word.size() && word[pos + r + yrun] == 'Y') ++yrun;
    for (std::size_t s = 0; s <= yrun; ++s) {
      if (r + s == 0) continue;
      total += dynkin_sum(word, pos + r + s, blocks + 1,
                          weight / (factorial(static_cast<int>(r)) * factorial(static_cast<int>(s))));
    }
  }
  return total;
}

}  // namespace

BchPlan::BchPlan(int step) : step_(step) {
  // Folded word -> coefficient.
  std::map<std::string, Rational> folded;
  for (int len = 1; len <= step; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string word;
      for (int i = len - 1; i >= 0; --i) word += ((bits >> i) & 1) ? 'Y' : 'X';
      Rational c = dynkin_sum(word, 0, 0, Rational(1)) / Rational(len);
      words_.emplace_back(word, c);
      if (c.is_zero()) continue;
      if (len >= 2 && word[len - 1] == word[len - 2]) continue;  // innermost bracket vanishes
      if (len >= 2 && word.substr(len - 2) == "YX") {
        word.replace(len - 2, 2, "XY");
        c = -c;
      }
      folded[word] += c;
    }
  }
  // Every suffix of a contributing word becomes a node; shorter suffixes first.
  std::map<std::pair<std::size_t, std::string>, bool> suffixes;
  for (const auto& [word, c] : folded) {
    if (c.is_zero()) continue;
    for (std::size_t start = 0; start < word.size(); ++start)
      suffixes[{word.size() - start, word.substr(start)}] = true;
  }
  std::map<std::string, int> index;
  for (const auto& [key, unused] : suffixes) {
    const std::string& suffix = key.second;
    int child = suffix.size() == 1 ? -1 : index.at(suffix.substr(1));
    Rational c(0);
    if (auto it = folded.find(suffix); it != folded.end()) c = it->second;
    index[suffix] = static_cast<int>(nodes_.size());
    nodes_.push_back({suffix[0] == 'X' ? 0 : 1, child, c, c.to_double()});
  }
  if (nodes_.size() > kMaxBchNodes) throw std::logic_error("BCH plan exceeds node capacity");
}

const BchPlan& BchPlan::for_step(int step) {
  if (step < 1 || step > kMaxBchStep)
    throw std::domain_error("BCH supports nilpotency step 1.." + std::to_string(kMaxBchStep) + ", got " +
                            std::to_string(step));
  static std::once_flag flags[kMaxBchStep];
  static std::unique_ptr<BchPlan> plans[kMaxBchStep];
  std::call_once(flags[step - 1], [step] { plans[step - 1].reset(new BchPlan(step)); });
  return *plans[step - 1];
}

}  // namespace nillab
