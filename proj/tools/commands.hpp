#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace linea::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,     // bad arguments, unreadable/malformed inputs, degenerate data
    kNumericalError = 3, // spline fit or other solver failure
};

/// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> parameters;
    std::string tool_version;
    std::vector<std::string> outputs;

    std::string to_json() const;
};

std::string tool_version();

/// Entry point behind the `linea` binary. args excludes the program name.
/// Diagnostics go to err, informational lines to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace linea::cli
