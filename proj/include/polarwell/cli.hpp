#pragma once

// polar-well <spectrum|potential|eigenfunction|figure|verify> [flags]
//
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error,
// 3 I/O error.

#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarwell::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kIoError = 3 };

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfiguration {
  std::string command;
  std::vector<int> m;  // empty = command default
  std::vector<int> n;
  int n_max = 2;
  bool n_max_set = false;
  int grid = 4000;
  int samples = 721;
  bool richardson = false;
  bool numeric = false;
  std::filesystem::path out_dir = ".";
  std::set<std::string> formats;  // empty = command default
  int l_max = 6;
  bool l_max_set = false;
  bool squared = false;
  bool overwrite = false;
  double cap = 100.0;
  std::string suite = "all";
  bool json_stdout = false;
  int figure_id = 0;
};

struct Artifact {
  std::string filename;
  std::string content;
};

struct CommandResult {
  std::vector<Artifact> artifacts;
  int exit_code = kSuccess;
  std::string summary;  // printed to stdout
};

[[nodiscard]] CommandResult cmd_spectrum(const RunConfiguration& cfg);
[[nodiscard]] CommandResult cmd_potential(const RunConfiguration& cfg);
[[nodiscard]] CommandResult cmd_eigenfunction(const RunConfiguration& cfg);
[[nodiscard]] CommandResult cmd_figure(const RunConfiguration& cfg);
[[nodiscard]] CommandResult cmd_verify(const RunConfiguration& cfg);

/// Creates out_dir if absent; refuses to replace existing files unless overwrite.
void write_artifacts(const std::vector<Artifact>& artifacts, const std::filesystem::path& out_dir, bool overwrite);

/// Full entry point: parse, dispatch, write, map errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polarwell::cli
