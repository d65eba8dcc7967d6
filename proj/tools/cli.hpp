#ifndef KDV_TOOLS_CLI_HPP
#define KDV_TOOLS_CLI_HPP

#include <iosfwd>

namespace kdv::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kComputationError = 2,
  kChecksFailed = 3,
};

/// Runs the command line front end; results go to --out or `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kdv::cli

#endif  // KDV_TOOLS_CLI_HPP
