#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace anp::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitEnvironment = 2;

/// Prints the validation report. 0 when valid, 1 on violations or a malformed
/// document, 2 when the file is missing or unreadable.
int cmd_validate(const std::filesystem::path& model, std::ostream& out, std::ostream& err);

/// Lists every question as `context row col  prompt`, then the total.
int cmd_questionnaire(const std::filesystem::path& model, std::ostream& out, std::ostream& err);

struct RunOptions {
  std::filesystem::path model;
  std::filesystem::path judgments;
  std::filesystem::path report;
  bool debug_matrices = false;
};

/// Runs the pipeline, writes the JSON report and prints consistency lines and the
/// ranking table. 1 on gate failure or bad input, 2 on I/O.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct ServeOptions {
  std::optional<int> port;
  std::filesystem::path data_dir = "anp-data";
  std::filesystem::path models_dir = ANP_MODELS_DIR;
  std::optional<std::filesystem::path> ui_dir;
};

/// Port from the flag, else ANP_PORT, else 8080. Throws std::invalid_argument on a bad value.
int resolve_port(std::optional<int> flag, const char* env_value);

/// Serves the session API on 127.0.0.1 until SIGINT or SIGTERM. 2 when the port is taken.
int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

}  // namespace anp::cli
