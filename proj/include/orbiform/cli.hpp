#pragma once

// Command-line front end and the verification-suite runner.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace orbiform {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

struct SuiteResult {
  std::string name;
  double worst = 0.0;      ///< worst-case defect
  double tolerance = 0.0;  ///< the suite passes iff worst <= tolerance
  bool passed = false;
};

struct VerifyOptions {
  int grid = 200;
  std::uint64_t seed = 1;
  /// Test hook: "construction" perturbs the built shapes, "concavity" the
  /// scanned values. Empty for a normal run.
  std::string corrupt;
};

/// Runs concavity, lemma_gap, derivative, continuity, identity and
/// construction suites.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

/// Entry point behind the orbiform executable. Subcommands: solve, table,
/// verify, descend. Returns 0, 1 (a verify suite failed), 2 (domain
/// error), 64 (usage) or 70 (internal error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbiform
