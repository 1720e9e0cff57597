#pragma once

namespace modrate::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2, kBudget = 3 };

/// Runs one `modrate` invocation: modulus, rate, verify, suite, gallery or
/// entropy. Reports go to --out (default standard output), diagnostics to
/// standard error.
int dispatch(int argc, const char* const* argv);

}  // namespace modrate::cli
