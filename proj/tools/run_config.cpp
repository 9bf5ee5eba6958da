#include "run_config.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sgq/errors.hpp"

namespace sgq::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

class KvFile {
 public:
  KvFile(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open config file");
    std::string line, section;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(t.substr(1, t.size() - 2));
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
      }
      const std::string key = trim(t.substr(0, eq));
      const std::string value = unquote(trim(t.substr(eq + 1)));
      values_[section + "." + key] = value;
    }
  }

  std::optional<std::string> raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end() || it->second.empty()) return std::nullopt;
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    return raw(key).value_or(dflt);
  }

  long get_long(const std::string& key, long dflt) const {
    const auto v = raw(key);
    if (!v) return dflt;
    try {
      return std::stol(*v);
    } catch (const std::exception&) {
      throw ValidationError(path_ + ": bad integer for " + key + ": '" + *v + "'");
    }
  }

  uint64_t get_seed(const std::string& key, uint64_t dflt) const {
    const auto v = raw(key);
    if (!v) return dflt;
    try {
      return std::stoull(*v);
    } catch (const std::exception&) {
      throw ValidationError(path_ + ": bad seed for " + key + ": '" + *v + "'");
    }
  }

  double get_double(const std::string& key, double dflt) const {
    const auto v = raw(key);
    if (!v) return dflt;
    try {
      return std::stod(*v);
    } catch (const std::exception&) {
      throw ValidationError(path_ + ": bad number for " + key + ": '" + *v + "'");
    }
  }

  bool get_bool(const std::string& key, bool dflt) const {
    const auto v = raw(key);
    if (!v) return dflt;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    throw ValidationError(path_ + ": bad boolean for " + key + ": '" + *v + "'");
  }

  std::vector<std::string> get_list(const std::string& key) const {
    const auto v = raw(key);
    std::vector<std::string> out;
    if (!v) return out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) out.push_back(t);
    }
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, std::string> values_;
};

}  // namespace

RunConfig parse_run_config(const std::string& path) {
  const KvFile kv(path);
  RunConfig cfg;
  cfg.config_dir = std::filesystem::absolute(path).parent_path().string();
  const auto resolve = [&cfg](const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return p;
    return (std::filesystem::path(cfg.config_dir) / fp).string();
  };

  cfg.edges_path = resolve(kv.get_string("data.edges", ""));
  cfg.features_path = resolve(kv.get_string("data.features", ""));
  cfg.labels_path = resolve(kv.get_string("data.labels", ""));
  if (kv.raw("data.classes")) {
    cfg.declared_classes = kv.get_long("data.classes", 0);
  }

  cfg.out_dir = resolve(kv.get_string("output.dir", "out"));
  cfg.split_seed = kv.get_seed("split.seed", 1);

  cfg.train.epochs = kv.get_long("train.epochs", 300);
  cfg.train.learning_rate = kv.get_double("train.learning_rate", 1e-2);
  const std::string klw = kv.get_string("train.kl_weight", "auto");
  cfg.train.kl_weight = klw == "auto" ? -1.0 : kv.get_double("train.kl_weight", -1.0);
  cfg.train.seed = kv.get_seed("train.seed", 2);
  const std::string balance = kv.get_string("train.link_balance", "reweighted");
  if (balance == "reweighted") {
    cfg.train.link_balance = LinkBalance::reweighted;
  } else if (balance == "plain") {
    cfg.train.link_balance = LinkBalance::plain;
  } else {
    throw ValidationError(kv.path() + ": bad train.link_balance '" + balance + "'");
  }
  cfg.train.embed_dim = kv.get_long("train.embed_dim", 128);
  cfg.train.hidden_dim = kv.get_long("train.hidden_dim", 128);
  cfg.train.ablate_alpha = kv.get_bool("train.ablate_alpha", false);
  cfg.train.ablate_beta = kv.get_bool("train.ablate_beta", false);
  cfg.train.ablate_gamma = kv.get_bool("train.ablate_gamma", false);
  cfg.alpha = kv.get_double("train.alpha", 1.0);
  cfg.beta = kv.get_double("train.beta", 1.0);
  cfg.gamma = kv.get_double("train.gamma", 1.0);
  cfg.weights_file = resolve(kv.get_string("train.weights_file", ""));

  cfg.tune_budget = kv.get_long("tune.budget", 15);
  cfg.tune_inner_epochs = kv.get_long("tune.inner_epochs", 100);
  cfg.tune_seed = kv.get_seed("tune.seed", 3);
  cfg.mock_objective = kv.get_string("tune.mock_objective", "none");
  if (cfg.mock_objective != "none" && cfg.mock_objective != "quadratic") {
    throw ValidationError(kv.path() + ": bad tune.mock_objective '" +
                          cfg.mock_objective + "'");
  }
  {
    const auto mins = kv.get_list("tune.mock_minimum");
    if (!mins.empty()) {
      if (mins.size() != 3) {
        throw ValidationError(kv.path() + ": tune.mock_minimum needs 3 values");
      }
      for (int i = 0; i < 3; ++i) cfg.mock_minimum[i] = std::stod(mins[i]);
    }
  }

  for (const std::string& f : kv.get_list("suite.families")) {
    cfg.families.push_back(parse_family(f));
  }
  for (const std::string& m : kv.get_list("suite.modes")) {
    cfg.modes.push_back(parse_mode(m));
  }
  cfg.n_target_nodes = static_cast<int>(kv.get_long("suite.n_target_nodes", 100));
  cfg.suite_seed = kv.get_seed("suite.seed", 4);

  cfg.infer_mode = kv.get_string("infer.mode", "mc");
  if (cfg.infer_mode != "det" && cfg.infer_mode != "mc") {
    throw ValidationError(kv.path() + ": bad infer.mode '" + cfg.infer_mode + "'");
  }
  cfg.mc_samples = kv.get_long("infer.samples", 30);
  if (cfg.mc_samples < 1) {
    throw ValidationError(kv.path() + ": infer.samples must be >= 1");
  }
  cfg.mc_seed = kv.get_seed("infer.seed", 5);
  return cfg;
}

}  // namespace sgq::cli
