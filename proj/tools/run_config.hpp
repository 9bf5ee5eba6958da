#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sgq/loss.hpp"
#include "sgq/suite.hpp"

namespace sgq::cli {

// Parsed run configuration; one file drives the whole pipeline. All paths
// are resolved relative to the config file's directory.
struct RunConfig {
  std::string config_dir;

  // [data]
  std::string edges_path;
  std::string features_path;
  std::string labels_path;
  std::optional<long> declared_classes;

  // [output]
  std::string out_dir = "out";

  // [split]
  uint64_t split_seed = 1;

  // [train]
  TrainConfig train;
  double alpha = 1.0, beta = 1.0, gamma = 1.0;
  std::string weights_file;  // optional; typically written by `tune`

  // [tune]
  long tune_budget = 15;
  long tune_inner_epochs = 100;
  uint64_t tune_seed = 3;
  std::string mock_objective = "none";  // test hook: "quadratic"
  std::array<double, 3> mock_minimum{0.3, 0.7, 0.5};

  // [suite]
  std::vector<QueryFamily> families;
  std::vector<QueryMode> modes;
  int n_target_nodes = 100;
  uint64_t suite_seed = 4;

  // [infer]
  std::string infer_mode = "mc";  // det | mc
  long mc_samples = 30;
  uint64_t mc_seed = 5;
};

// Key/value sections, '#'-comments, values optionally quoted.
RunConfig parse_run_config(const std::string& path);

}  // namespace sgq::cli
