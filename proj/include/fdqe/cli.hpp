#ifndef FDQE_CLI_HPP
#define FDQE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace fdqe::cli {

/// Dispatches one command line (without the program name). Returns 0 on
/// success, 1 on usage or validation errors, 2 when --strict is set and an
/// optimizer failed to converge.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdqe::cli

#endif
