#ifndef MMS_CLI_CLI_HPP_
#define MMS_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace mms::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kBudget = 3,
  kUnknown = 4,
};

/// Runs the `mms` command line with explicit streams. args[0] is the
/// program name.
auto run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int;

}  // namespace mms::cli

#endif  // MMS_CLI_CLI_HPP_
