#pragma once

// The eleven acceptance criteria as library calls, shared by the acceptance
// test binary and the `verify-all` subcommand.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace repzeta {

enum class Profile { quick, full };

struct AcceptanceOptions {
  Profile profile = Profile::full;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  /// Directory for the criterion-7 DOT files; empty skips writing them.
  std::filesystem::path dot_dir;
  /// Mutation smoke test: adds 1 to the identity fiber of every fiber count.
  bool inject_fiber_fault = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  7 pipeline verification: ..." (no timing).
std::string format_result(const CriterionResult& r);

}  // namespace repzeta
