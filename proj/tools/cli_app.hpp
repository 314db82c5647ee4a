#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stratdisc::cli {

/// Runs one CLI invocation. Exit code 0 on success, 1 for runtime errors,
/// 2 for argument errors; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a theta argument: a radian literal or one of the named tokens
/// "zero", "critical", "quarter-pi", "half-pi".
double parse_theta(const std::string& text);

}  // namespace stratdisc::cli
