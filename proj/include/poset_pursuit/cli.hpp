#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pursuit {

enum class ExitStatus { Decided = 0, Error = 1, Inconclusive = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int budget = 3;
  int unroll = 4;
  int cap = 6;  // largest n accepted by enumerate and cross-validate
  std::string format = "table";  // table | json for listings; dot | svg for render
  std::uint64_t seed = 1;

  // Throws PreconditionError on non-positive budgets.
  void validate() const;
};

// Runs the command line `args` (without the program name), writing results
// to `out` and diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pursuit
