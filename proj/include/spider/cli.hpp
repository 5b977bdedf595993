#pragma once

namespace spider {

// Entry point of the command-line tool: parses argv, dispatches to the
// subcommand, writes results to stdout or --out.  Returns the process exit
// code: 0 success, 2 invalid arguments or unsupported regime, 3 internal
// cross-check failure.
int cli_run(int argc, const char* const* argv);

} // namespace spider
