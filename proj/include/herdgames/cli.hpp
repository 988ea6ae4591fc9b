#ifndef HERDGAMES_CLI_HPP
#define HERDGAMES_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace herdgames::cli {

// Runs one CLI invocation (args exclude the program name) and writes the
// result document to `out` and diagnostics to `err`. Identical argv yields
// byte-identical output. Exit codes: 0 success, 2 usage error, 3 solver
// error, 4 oracle disagreement.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace herdgames::cli

#endif  // HERDGAMES_CLI_HPP
