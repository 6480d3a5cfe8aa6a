// anp: validate decision networks, list questionnaires, run the priority pipeline and
// serve elicitation sessions over HTTP.

#include <CLI11.hpp>

#include <iostream>

#include "anp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Analytic network process toolkit"};
  app.require_subcommand(1);

  std::string model;
  auto* validate = app.add_subcommand("validate", "Check a model for structural problems");
  validate->add_option("model", model, "Model file")->required();

  auto* questionnaire = app.add_subcommand("questionnaire", "List every pairwise question of a model");
  questionnaire->add_option("model", model, "Model file")->required();

  anp::cli::RunOptions run_options;
  auto* run = app.add_subcommand("run", "Compute priorities from a judgment file");
  run->add_option("model", run_options.model, "Model file")->required();
  run->add_option("judgments", run_options.judgments, "Judgment file")->required();
  run->add_option("-o,--out", run_options.report, "Report file to write")->required();
  run->add_flag("--debug-matrices", run_options.debug_matrices,
                "Print the unweighted, weighted and limit supermatrices");

  anp::cli::ServeOptions serve_options;
  auto* serve = app.add_subcommand("serve", "Serve the elicitation API");
  serve->add_option("--port", serve_options.port, "Port to bind (overrides ANP_PORT, default 8080)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--data", serve_options.data_dir, "Session storage directory")->capture_default_str();
  serve->add_option("--models", serve_options.models_dir, "Directory of named models")->capture_default_str();
  serve->add_option("--ui", serve_options.ui_dir, "Static web client directory mounted at /ui")
      ->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the environment exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : anp::cli::kExitEnvironment;
  }

  if (*validate) return anp::cli::cmd_validate(model, std::cout, std::cerr);
  if (*questionnaire) return anp::cli::cmd_questionnaire(model, std::cout, std::cerr);
  if (*run) return anp::cli::cmd_run(run_options, std::cout, std::cerr);
  return anp::cli::cmd_serve(serve_options, std::cout, std::cerr);
}
