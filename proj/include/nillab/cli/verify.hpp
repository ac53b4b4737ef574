#pragma once

#include <string>
#include <vector>

namespace nillab {

struct CheckResult {
  std::string group;  // "golden", "c1", ..., "c8"
  std::string name;
  bool passed;
  std::string detail;  // deterministic: depends only on the computed numbers
};

/// The golden suite behind `nillab verify`: catalog structure plus the
/// numeric acceptance checks, all with pinned seeds.
std::vector<CheckResult> run_verify_suite();

/// Individual groups, for callers that time them separately.
std::vector<CheckResult> verify_golden_structure();
std::vector<CheckResult> verify_example_autocorrelations();  // c1
std::vector<CheckResult> verify_heisenberg4_commutator();    // c2
std::vector<CheckResult> verify_bch();                       // c3
std::vector<CheckResult> verify_structure_suite();           // c4
std::vector<CheckResult> verify_dichotomy();                 // c5
std::vector<CheckResult> verify_uniformity();                // c6
std::vector<CheckResult> verify_joint_support();             // c7
std::vector<CheckResult> verify_pushforward();               // c8

}  // namespace nillab
