#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jcrev::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalFailure = 3 };

/// Entry point for `jcrev scan|report|preset ...`. Data goes to files or
/// `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace jcrev::cli
