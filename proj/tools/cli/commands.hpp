#pragma once

#include <exception>
#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace fstgec::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitInternal = 4;

// Maps a library exception onto an exit code. SentenceError maps by its
// nested cause.
int ExitCodeFor(const std::exception& e);

// Config file text ("key = value" lines) that reproduces `config`. Paths are
// written as absolute paths.
std::string FormatConfig(const RunConfig& config);

// Parses the command line, runs one subcommand and returns the exit code.
// Results go to `out`, diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fstgec::cli
