#pragma once

#include <string>

#include "run_config.hpp"

namespace sgq::cli {

// Pipeline commands; each is a pure function of (config, input files,
// seeds) and re-runs are byte-identical except run_meta.json.
void cmd_prepare(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
void cmd_tune(const RunConfig& cfg);
void cmd_gen_queries(const RunConfig& cfg);
void cmd_infer(const RunConfig& cfg, const std::string& query_path,
               const std::string& answer_path);
void cmd_eval(const RunConfig& cfg);

}  // namespace sgq::cli
