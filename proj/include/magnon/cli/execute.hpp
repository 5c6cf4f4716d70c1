#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "magnon/cli/config.hpp"

namespace magnon::cli
{

inline constexpr const char *kToolName = "magnon-ep-lab";

struct ExecutionResult
{
  /// Files written, data CSV first and manifest.json last.
  std::vector<std::filesystem::path> outputs;
  /// Serialized manifest as written.
  std::string manifest;
};

/// Runs the configured computation, then writes the CSV and manifest.json into
/// config.output_dir (created if missing). Nothing is written if the computation throws.
ExecutionResult Execute(const RunConfig &config, const std::string &config_path = "");

/// Entry point: magnon-ep-lab <command> --config <file> [--set key=value ...] --out <dir>.
///
/// Returns 0 on success, 2 on usage or config errors and 1 on computation or I/O
/// errors. Every failure writes exactly one "magnon-ep-lab: error: ..." line to err.
int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace magnon::cli
