#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "sshrabi/config.hpp"

namespace sshrabi::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command;  ///< band, stability, ground-state, rabi, spectra-check
  std::optional<std::filesystem::path> params;
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  int verbosity = 0;
  bool print_config = false;
};

enum ExitCode : int {
  kSuccess = 0,
  kChecksFailed = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
  kModelConsistency = 4,
};

bool is_command(const std::string& name);

/// Default parameters of a command, as printed by --print-config.
KeyValueConfig default_parameters(const std::string& command);

/// Executes one command. Artifacts go to out_dir; a one-line JSON summary
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sshrabi::cli
