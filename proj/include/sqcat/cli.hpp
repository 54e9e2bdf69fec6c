#ifndef SQCAT_CLI_HPP
#define SQCAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sqcat::cli {

/// Dispatches one command. Exit status: 0 pass, 1 a check failed, 2 malformed
/// input. Output is byte-stable for a fixed invocation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqcat::cli

#endif
