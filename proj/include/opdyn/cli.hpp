#ifndef OPDYN_CLI_HPP_
#define OPDYN_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace opdyn {

// Parses command-line arguments (program name excluded) and executes the
// selected subcommand: run, scenario (alias sweep), net-stats, or plot.
// Normal output goes to `out`, diagnostics to `err`. Returns the process
// exit status: 0 on success, 1 on IO failures, 2 on usage or config errors.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace opdyn

#endif  // OPDYN_CLI_HPP_
