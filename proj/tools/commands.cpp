#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "sgq/checkpoint.hpp"
#include "sgq/errors.hpp"
#include "sgq/evaluate.hpp"
#include "sgq/graph_io.hpp"
#include "sgq/query_io.hpp"
#include "sgq/train.hpp"
#include "sgq/tuner.hpp"

namespace sgq::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string out_path(const RunConfig& cfg, const std::string& rel) {
  return (fs::path(cfg.out_dir) / rel).string();
}

void ensure_out_dir(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  fs::create_directories(out_path(cfg, "suites"));
  fs::create_directories(out_path(cfg, "answers"));
}

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file for hashing");
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<uint8_t>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

// Manifest holds content hashes only; timestamps live in run_meta.json so
// identical re-runs produce identical artifacts.
void update_manifest(const RunConfig& cfg, const std::string& command,
                     const std::vector<std::string>& artifacts) {
  const std::string manifest_path = out_path(cfg, "manifest.json");
  json manifest;
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    try {
      in >> manifest;
    } catch (const json::exception&) {
      manifest = json::object();
    }
  }
  if (!manifest.contains("artifacts")) manifest["artifacts"] = json::object();
  for (const std::string& rel : artifacts) {
    const std::string full = out_path(cfg, rel);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(full)));
    manifest["artifacts"][rel] = {
        {"fnv1a64", std::string(hex)},
        {"bytes", static_cast<long>(fs::file_size(full))}};
  }
  std::ofstream out(manifest_path);
  out << manifest.dump(2) << "\n";

  json meta;
  const std::string meta_path = out_path(cfg, "run_meta.json");
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    try {
      in >> meta;
    } catch (const json::exception&) {
      meta = json::object();
    }
  }
  meta[command] = {
      {"unix_time",
       std::chrono::duration_cast<std::chrono::seconds>(
           std::chrono::system_clock::now().time_since_epoch())
           .count()}};
  std::ofstream mout(meta_path);
  mout << meta.dump(2) << "\n";
}

Graph load_prepared(const RunConfig& cfg) {
  bool preprocessed = false;
  Graph g = load_saved_graph(out_path(cfg, "graph.json"), &preprocessed);
  if (!preprocessed) {
    throw ValidationError(out_path(cfg, "graph.json") +
                          ": graph artifact is not preprocessed; run prepare");
  }
  return g;
}

ReconWeights resolve_weights(const RunConfig& cfg) {
  if (cfg.weights_file.empty()) return {cfg.alpha, cfg.beta, cfg.gamma};
  std::ifstream in(cfg.weights_file);
  if (!in) {
    throw ValidationError(cfg.weights_file +
                          ": weights file not found (run tune first or drop "
                          "train.weights_file)");
  }
  json j;
  try {
    in >> j;
    return {j.at("alpha").get<double>(), j.at("beta").get<double>(),
            j.at("gamma").get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(cfg.weights_file + ": " + e.what());
  }
}

TrainConfig train_config(const RunConfig& cfg) { return cfg.train; }

std::string suite_file(QueryFamily f, QueryMode m) {
  return "suites/" + family_name(f) + "." + mode_name(m) + ".json";
}

}  // namespace

void cmd_prepare(const RunConfig& cfg) {
  if (cfg.edges_path.empty() || cfg.features_path.empty()) {
    throw ValidationError("config: [data] edges and features are required");
  }
  ensure_out_dir(cfg);
  LoadReport report;
  Graph raw = load_graph(cfg.edges_path, cfg.features_path, cfg.labels_path,
                         cfg.declared_classes, &report);
  if (!report.labels_file_found) {
    std::cerr << "warning: labels file not found, all nodes unlabeled\n";
  }
  if (report.n_unlabeled > 0) {
    std::cerr << "warning: " << report.n_unlabeled << " unlabeled nodes\n";
  }
  Graph g = preprocess(raw);
  save_graph(g, out_path(cfg, "graph.json"), /*preprocessed=*/true);
  const NodeSplit split = split_nodes(g, cfg.split_seed);
  save_split(split, g, out_path(cfg, "split.json"));
  update_manifest(cfg, "prepare", {"graph.json", "split.json"});
  std::cout << "prepared graph: " << g.n_nodes << " nodes, " << report.n_edges
            << " input links, split " << split.train.size() << "/"
            << split.validation.size() << "/" << split.test.size() << "\n";
}

void cmd_train(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const Graph g = load_prepared(cfg);
  const NodeSplit split = load_split(out_path(cfg, "split.json"), g);
  const Graph train_graph = induced_subgraph(g, split.train);
  const ReconWeights weights = resolve_weights(cfg);
  TrainResult result = train(train_graph, train_config(cfg), weights);
  save_model(result.model, out_path(cfg, "model.json"));
  save_trace_csv(result.trace, out_path(cfg, "train_trace.csv"));
  update_manifest(cfg, "train", {"model.json", "train_trace.csv"});
  std::cout << "trained " << result.trace.size() << " epochs, final loss "
            << result.trace.back().total_loss << " (weights " << weights.alpha
            << "," << weights.beta << "," << weights.gamma << ")\n";
}

void cmd_tune(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  BoConfig bo;
  bo.budget = cfg.tune_budget;
  bo.seed = cfg.tune_seed;

  BoResult result;
  if (cfg.mock_objective == "quadratic") {
    const auto m = cfg.mock_minimum;
    result = minimize_over_unit_cube(
        [&m](const WeightPoint& p) {
          double s = 0.0;
          for (int i = 0; i < 3; ++i) s += (p[i] - m[i]) * (p[i] - m[i]);
          return s;
        },
        bo);
  } else {
    const Graph g = load_prepared(cfg);
    const NodeSplit split = load_split(out_path(cfg, "split.json"), g);
    const Graph train_graph = induced_subgraph(g, split.train);
    const Graph val_graph = induced_subgraph(g, split.validation);
    TrainConfig inner = train_config(cfg);
    inner.epochs = cfg.tune_inner_epochs;
    result = tune_weights(train_graph, val_graph, inner, bo);
  }

  json j = {{"alpha", result.best_point[0]},
            {"beta", result.best_point[1]},
            {"gamma", result.best_point[2]},
            {"objective", result.best_objective}};
  std::ofstream out(out_path(cfg, "weights.json"));
  out << j.dump(2) << "\n";
  out.close();
  save_tuning_trace_csv(result.trace, out_path(cfg, "tune_trace.csv"));
  update_manifest(cfg, "tune", {"weights.json", "tune_trace.csv"});
  std::cout << "tuned weights (" << result.best_point[0] << ","
            << result.best_point[1] << "," << result.best_point[2]
            << ") objective " << result.best_objective << "\n";
}

void cmd_gen_queries(const RunConfig& cfg) {
  if (cfg.families.empty() || cfg.modes.empty()) {
    throw ValidationError("config: [suite] families and modes are required");
  }
  ensure_out_dir(cfg);
  const Graph g = load_prepared(cfg);
  const NodeSplit split = load_split(out_path(cfg, "split.json"), g);
  SuiteConfig sc;
  sc.n_target_nodes = cfg.n_target_nodes;
  std::vector<std::string> artifacts;
  for (const QueryFamily family : cfg.families) {
    for (const QueryMode mode : cfg.modes) {
      const QuerySuite suite =
          generate_suite(g, split, family, mode, cfg.suite_seed, sc);
      const std::string rel = suite_file(family, mode);
      save_suite(suite, out_path(cfg, rel));
      artifacts.push_back(rel);
      std::cout << rel << ": " << suite.queries.size() << " queries, "
                << suite.skipped.size() << " skipped\n";
    }
  }
  update_manifest(cfg, "gen-queries", artifacts);
}

void cmd_infer(const RunConfig& cfg, const std::string& query_path,
               const std::string& answer_path) {
  ensure_out_dir(cfg);
  const VgaePlusModel model = load_model(out_path(cfg, "model.json"));
  const SubgraphQuery query = load_query(query_path);
  QueryAnswer answer;
  if (cfg.infer_mode == "det") {
    answer = infer_deterministic(model, query);
  } else {
    answer = infer_mc(model, query, cfg.mc_samples, cfg.mc_seed);
  }
  std::string dest = answer_path;
  if (dest.empty()) {
    dest = out_path(cfg, "answers/" +
                             fs::path(query_path).stem().string() +
                             ".answer.json");
  }
  save_answer(answer, dest);
  std::cout << dest << ": joint_log_prob " << answer.joint_log_prob << " ("
            << answer.mode << ")\n";
}

void cmd_eval(const RunConfig& cfg) {
  if (cfg.families.empty() || cfg.modes.empty()) {
    throw ValidationError("config: [suite] families and modes are required");
  }
  ensure_out_dir(cfg);
  const VgaePlusModel model = load_model(out_path(cfg, "model.json"));
  InferenceSpec spec;
  spec.kind = cfg.infer_mode == "det" ? InferenceSpec::Kind::deterministic
                                      : InferenceSpec::Kind::monte_carlo;
  spec.samples = cfg.mc_samples;
  spec.seed = cfg.mc_seed;

  std::vector<FamilyReport> reports;
  for (const QueryFamily family : cfg.families) {
    for (const QueryMode mode : cfg.modes) {
      const std::string rel = suite_file(family, mode);
      const std::string full = out_path(cfg, rel);
      if (!fs::exists(full)) {
        throw ValidationError(full + ": suite not found; run gen-queries");
      }
      const QuerySuite suite = load_suite(full);
      reports.push_back(evaluate(model, suite, spec));
      const FamilyReport& r = reports.back();
      std::cout << family_name(family) << "/" << mode_name(mode) << " ["
                << r.inference << "]";
      if (r.link_auc) std::cout << " link_auc=" << *r.link_auc;
      if (r.label_auc) std::cout << " label_auc=" << *r.label_auc;
      if (r.joint_auc) std::cout << " joint_auc=" << *r.joint_auc;
      std::cout << "\n";
    }
  }
  save_reports_json(reports, out_path(cfg, "report.json"));
  save_reports_csv(reports, out_path(cfg, "report.csv"));
  update_manifest(cfg, "eval", {"report.json", "report.csv"});
}

}  // namespace sgq::cli
