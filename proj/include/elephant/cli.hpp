#pragma once

namespace elephant {

/// Entry point behind the binary; exposed so tests can drive subcommands
/// in-process. Returns the process exit code (0 ok, 1 numeric failure,
/// 2 argument error).
int run_cli(int argc, const char* const* argv);

}  // namespace elephant
