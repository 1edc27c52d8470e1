#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyprog {

/// Runs `polyprog <subcommand> ...` with args excluding the program name.
/// Returns 0 when every requested check passes, 1 when a check fails or a computation
/// does not apply, 2 on usage, parse or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyprog
