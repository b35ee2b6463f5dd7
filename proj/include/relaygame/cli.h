#ifndef RELAYGAME_CLI_H_
#define RELAYGAME_CLI_H_

// Subcommands of the `relaygame` tool:
//
//   relaygame solve    --config FILE [--out DIR] [--accelerate] [--threads N]
//   relaygame verify   --config FILE [--out DIR] [--threads N]
//   relaygame simulate --config FILE [--strategy NAME] [--seed N] ...
//   relaygame sweep    --config FILE [--seed N] [--out DIR] [--threads N]
//
// Output files are pure functions of the config and seed.

#include <iosfwd>
#include <string>
#include <vector>

#include "relaygame/analysis.h"
#include "relaygame/config.h"

namespace relaygame {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitUnexpectedVerdict = 3,
};

enum class Verdict { kHolds, kViolated, kEither };

// What cmd_verify expects of `property` under this config. The BER-bound
// cost at w = 50, A_m = 9 on the default grid is expected to lose
// monotonicity and error-cost submodularity; other BER-bound settings accept
// either outcome for those two, and everything else must hold.
Verdict ExpectedVerdict(const RunConfig& config, Property property);

// `args` excludes the program name. Diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace relaygame

#endif  // RELAYGAME_CLI_H_
