#ifndef TORSION_CLI_HPP
#define TORSION_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace torsion::cli {

enum ExitCode { ok = 0, verification_failed = 1, config_error = 2, unsupported_group = 3 };

/// Runs the command line `args` (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torsion::cli

#endif  // TORSION_CLI_HPP
