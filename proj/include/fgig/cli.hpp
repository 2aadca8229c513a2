#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace fgig {

enum class Command { solve, sa, convergence, conditioning, bench };

struct RunManifest {
  Command command = Command::solve;
  std::filesystem::path config_path;
  std::filesystem::path output_dir;
  bool parallel = false;
  long long seed = 0;
};

[[nodiscard]] Command parse_command(const std::string& name);
[[nodiscard]] std::string command_name(Command command);

/// Each command reads the manifest's config, writes its CSV files into the
/// output directory and returns the written paths.
std::vector<std::filesystem::path> cmd_solve(const RunManifest& manifest);
std::vector<std::filesystem::path> cmd_sa(const RunManifest& manifest);
std::vector<std::filesystem::path> cmd_convergence(const RunManifest& manifest);
std::vector<std::filesystem::path> cmd_conditioning(const RunManifest& manifest);
std::vector<std::filesystem::path> cmd_bench(const RunManifest& manifest);

std::vector<std::filesystem::path> run_manifest(const RunManifest& manifest);

/// `fgig <command> --config <path> --out <dir> [--parallel] [--seed <int>]`.
/// Returns the process exit code: 0 on success, 1 on validation or IO
/// errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fgig
