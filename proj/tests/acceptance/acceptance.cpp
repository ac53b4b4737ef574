// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "nillab/catalog/catalog.hpp"
#include "nillab/cli/verify.hpp"
#include "nillab/group/group.hpp"
#include "nillab/structure/structure.hpp"

#include "../support/matrix_oracle.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace nillab;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome from_checks(const std::vector<CheckResult>& checks) {
  Outcome o;
  int passed = 0;
  for (const auto& c : checks) {
    if (c.passed) {
      ++passed;
    } else {
      o.passed = false;
      o.detail += " [failed " + c.name + ": " + c.detail + "]";
    }
  }
  o.detail = std::to_string(passed) + "/" + std::to_string(checks.size()) + " checks" + o.detail;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AffineNilsystem default_system(const std::string& name) { return catalog_build(name, default_params(name)); }

// The library group law against products of unitriangular matrices.
Outcome matrix_oracle_products() {
  std::mt19937_64 rng(77);
  Outcome o;
  int agree = 0, total = 0;
  for (const auto& [name, layout] : {std::pair{std::string("heisenberg3"), oracle::heisenberg3_layout()},
                                     std::pair{std::string("heisenberg4"), oracle::heisenberg4_layout()}}) {
    auto sys = default_system(name);
    const int m = sys.dim();
    for (int trial = 0; trial < 100; ++trial) {
      auto a = oracle::random_rational_vector(rng, m);
      auto b = oracle::random_rational_vector(rng, m);
      ++total;
      const bool bch_ok = bch<Rational>(sys.algebra(), a, b) == oracle::bch(layout, a, b);
      auto prod = multiply(sys.algebra(), GroupElement<Rational>{a}, GroupElement<Rational>{b});
      const bool mul_ok =
          prod.coords == oracle::psi_inverse(layout, oracle::mul(oracle::psi(layout, a), oracle::psi(layout, b)));
      agree += bch_ok && mul_ok ? 1 : 0;
    }
  }
  o.passed = agree == total;
  o.detail = "matrix oracle " + std::to_string(agree) + "/" + std::to_string(total);
  return o;
}

// commutator(tau, g) against tau g tau^-1 g^-1 computed with 4x4 matrices.
Outcome matrix_oracle_commutator() {
  auto sys = default_system("heisenberg4");
  const auto layout = oracle::heisenberg4_layout();
  std::mt19937_64 rng(5);
  const auto tau = oracle::psi(layout, sys.translation().coords);
  auto inv = [](const oracle::Mat<ExtScalar>& g) {
    auto l = oracle::log_unipotent(g);
    return oracle::exp_nilpotent(oracle::add(l, l, ExtScalar(Rational(-2))));
  };
  int agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Vector<ExtScalar> t(6);
    for (int i = 0; i < 6; ++i) t[i] = ExtScalar(oracle::random_rational(rng));
    const auto g = oracle::psi(layout, t);
    const auto expected = oracle::psi_inverse(layout, oracle::mul(oracle::mul(tau, g), oracle::mul(inv(tau), inv(g))));
    agree += commutator(sys.algebra(), sys.translation(), ExactElement{t}).coords == expected ? 1 : 0;
  }
  return {agree == 20, "matrix oracle " + std::to_string(agree) + "/20"};
}

Outcome merge(Outcome a, const Outcome& b) {
  a.passed = a.passed && b.passed;
  a.detail += "; " + b.detail;
  return a;
}

std::string run_verify(const std::string& exe, const std::string& threads, bool& ok) {
  const std::string cmd = "NILLAB_THREADS=" + threads + " '" + exe + "' verify";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    ok = false;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  ok = pclose(pipe) == 0;
  return out;
}

Outcome determinism(const std::string& exe) {
  bool ok1 = false, ok2 = false, ok4 = false;
  const auto a = run_verify(exe, "1", ok1);
  const auto b = run_verify(exe, "1", ok2);
  const auto c = run_verify(exe, "4", ok4);
  Outcome o;
  o.passed = ok1 && ok2 && ok4 && !a.empty() && a == b && a == c;
  o.detail = std::to_string(a.size()) + " bytes; repeat " + (a == b ? "identical" : "differs") + ", 4 threads " +
             (a == c ? "identical" : "differs") + (ok1 && ok2 && ok4 ? "" : ", verify exited nonzero");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to nillab executable>\n";
    return 2;
  }
  const std::string exe = argv[1];
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1,
       [] {
         auto t0 = std::chrono::steady_clock::now();
         auto o = from_checks(verify_example_autocorrelations());
         const double per = seconds_since(t0) / 4;
         o.passed = o.passed && per <= 10.0;
         o.detail += "; " + std::to_string(per) + " s per observable";
         return o;
       }},
      {2, [] { return merge(from_checks(verify_heisenberg4_commutator()), matrix_oracle_commutator()); }},
      {3, [] { return merge(from_checks(verify_bch()), matrix_oracle_products()); }},
      {4, [] { return from_checks(verify_structure_suite()); }},
      {5,
       [] {
         auto t0 = std::chrono::steady_clock::now();
         auto o = from_checks(verify_dichotomy());
         const double total = seconds_since(t0);
         o.passed = o.passed && total <= 120.0;
         o.detail += "; " + std::to_string(total) + " s total";
         return o;
       }},
      {6, [] { return from_checks(verify_uniformity()); }},
      {7, [] { return from_checks(verify_joint_support()); }},
      {8, [] { return from_checks(verify_pushforward()); }},
      {9, [&exe] { return determinism(exe); }},
  };
  bool all = true;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::cout << "criterion " << id << ": " << (o.passed ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
