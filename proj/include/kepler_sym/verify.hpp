#pragma once

// Property suites driven by the CLI and the acceptance binary. Every case
// measures one residual against one tolerance; randomness comes from the
// report seed through stream_rng, keyed by case name.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kepler_sym/parallel.hpp"

namespace kepler_sym {

enum class CaseStatus { kPass, kFail, kError };
std::string_view to_string(CaseStatus s);

struct CaseResult {
  std::string name;
  CaseStatus status;
  double residual;
  double tol;
  std::string detail;
};

struct VerifySummary {
  int pass = 0;
  int fail = 0;
  int error = 0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed;
  std::vector<CaseResult> cases;  // sorted by name
  VerifySummary summary;
  double wall_time_s;

  bool ok() const { return summary.fail == 0 && summary.error == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Replaces every case tolerance when set.
  std::optional<double> tol;
  Exec exec = Exec::kOpenMP;
};

// symmetry, duality, invariants, theorems, maps; "all" runs every case.
const std::vector<std::string>& suite_names();

struct CaseInfo {
  std::string name;
  std::string suite;
  double tol;
};
// Throws Error(kInvalidArgument) for an unknown suite.
std::vector<CaseInfo> list_cases(std::string_view suite);

// Throws Error(kInvalidArgument) for an unknown suite.
VerifyReport run_suite(std::string_view suite, const VerifyOptions& options = {});

// {suite, seed, cases: [{name, status, residual, tol, detail}], summary,
// wall_time_s}; the timing field is dropped when with_time is false.
std::string to_json(const VerifyReport& report, bool with_time = true);

}  // namespace kepler_sym
