#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace grs::app {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kKernelError = 3,
  kSolverFailure = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string module;
  std::string name;
  bool pass;
  double worst;  // worst residual (or the statistic named in `name`)
  double limit;
  std::string note;
};

inline const std::vector<std::string> kVerifyScopes = {"minkowski_core", "surface_kernel", "rotational_surfaces",
                                                        "meridian_solvers", "cli_runner"};

/// Runs the property checks of one module, or of all with scope "all".
/// Throws InvalidArgument for an unknown scope.
std::vector<CheckResult> run_verify(const std::string& scope, std::uint64_t seed);

/// "PASS  module  name  worst=... limit=..." per check.
void print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace grs::app
