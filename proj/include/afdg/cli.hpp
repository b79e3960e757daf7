#ifndef AFDG_CLI_HPP
#define AFDG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace afdg {

/// Dispatches one command line (without the program name). Returns the
/// process exit status: 0 on success, 1 on a mathematical negative
/// (certificate found, not positive, distinct/unknown, failed check),
/// 2 on input or usage errors. All output is deterministic.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace afdg

#endif
