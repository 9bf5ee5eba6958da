#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sgq/errors.hpp"

namespace {

// Exit codes: 0 success, 2 validation error, 3 numeric failure.
constexpr int kValidationExit = 2;
constexpr int kNumericExit = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_override;
};

sgq::cli::RunConfig load_config(const CommonArgs& args) {
  sgq::cli::RunConfig cfg = sgq::cli::parse_run_config(args.config_path);
  if (!args.out_override.empty()) cfg.out_dir = args.out_override;
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "Run configuration file")
      ->required();
  cmd->add_option("--out", args->out_override, "Override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Subgraph query answering from an augmented variational graph "
      "auto-encoder"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string query_path, answer_path;

  CLI::App* prepare = app.add_subcommand(
      "prepare", "Load, preprocess and split the input graph");
  add_common(prepare, &args);

  CLI::App* train =
      app.add_subcommand("train", "Train the model on the training subgraph");
  add_common(train, &args);

  CLI::App* tune = app.add_subcommand(
      "tune", "Bayesian-optimize the reconstruction weights");
  add_common(tune, &args);

  CLI::App* gen = app.add_subcommand("gen-queries",
                                     "Generate test query suites");
  add_common(gen, &args);

  CLI::App* infer =
      app.add_subcommand("infer", "Answer a single subgraph query");
  add_common(infer, &args);
  infer->add_option("--query", query_path, "Query JSON file")->required();
  infer->add_option("--answer", answer_path, "Answer output path");

  CLI::App* eval =
      app.add_subcommand("eval", "Evaluate generated suites and write reports");
  add_common(eval, &args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (prepare->parsed()) {
      sgq::cli::cmd_prepare(load_config(args));
    } else if (train->parsed()) {
      sgq::cli::cmd_train(load_config(args));
    } else if (tune->parsed()) {
      sgq::cli::cmd_tune(load_config(args));
    } else if (gen->parsed()) {
      sgq::cli::cmd_gen_queries(load_config(args));
    } else if (infer->parsed()) {
      sgq::cli::cmd_infer(load_config(args), query_path, answer_path);
    } else if (eval->parsed()) {
      sgq::cli::cmd_eval(load_config(args));
    }
  } catch (const sgq::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericExit;
  } catch (const sgq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
