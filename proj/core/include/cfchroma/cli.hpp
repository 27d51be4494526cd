#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfc {

/// Exit codes shared by every subcommand:
///   0 success / property holds
///   1 property violated (witness JSON on stdout)
///   2 usage or input error
///   3 cost-cap refusal
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Help text of a subcommand ("" for the top level), used by the reflection
/// tests that keep --help in sync with the flag tables.
std::string cli_help_text(const std::string& subcommand);

/// Names of all options registered for a subcommand.
std::vector<std::string> cli_option_names(const std::string& subcommand);

} // namespace cfc
