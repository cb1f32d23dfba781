#pragma once

// Command-line entry point, callable in-process for tests.

#include <ostream>
#include <string>
#include <vector>

namespace scenweave {

/// Runs the scenweave command line (args without the program name).
/// Returns 0 when everything passed, 1 when scenarios failed or are
/// pending, 2 on usage, input, or parse errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scenweave
