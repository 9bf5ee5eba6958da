#include "sgq/graph_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, long line,
                             const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return in;
}

json read_json(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << j.dump(2) << "\n";
}

std::unordered_map<std::string, long> id_index(const Graph& g) {
  std::unordered_map<std::string, long> idx;
  for (long i = 0; i < g.n_nodes; ++i) idx[g.node_ids[i]] = i;
  return idx;
}

}  // namespace

Graph load_graph(const std::string& edges_path, const std::string& features_path,
                 const std::string& labels_path,
                 std::optional<long> declared_classes, LoadReport* report) {
  LoadReport local;
  Graph g;

  {  // features: defines node order and feature dimension
    std::ifstream in = open_or_throw(features_path);
    std::string line;
    long lineno = 0;
    std::vector<std::vector<uint8_t>> rows;
    std::unordered_map<std::string, long> seen;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto cells = split_csv(t);
      if (lineno == 1) {
        if (cells.size() < 2) {
          parse_fail(features_path, lineno, "header needs node_id and features");
        }
        g.feature_dim = static_cast<long>(cells.size()) - 1;
        continue;
      }
      if (static_cast<long>(cells.size()) != g.feature_dim + 1) {
        parse_fail(features_path, lineno,
                   "expected " + std::to_string(g.feature_dim + 1) + " cells, got " +
                       std::to_string(cells.size()));
      }
      const std::string id = trim(cells[0]);
      if (id.empty()) parse_fail(features_path, lineno, "empty node id");
      if (!seen.emplace(id, static_cast<long>(rows.size())).second) {
        parse_fail(features_path, lineno, "duplicate node id '" + id + "'");
      }
      std::vector<uint8_t> row(g.feature_dim);
      for (long j = 0; j < g.feature_dim; ++j) {
        const std::string v = trim(cells[j + 1]);
        if (v == "0") {
          row[j] = 0;
        } else if (v == "1") {
          row[j] = 1;
        } else {
          throw ValidationError(features_path + ":" + std::to_string(lineno) +
                                ": non-binary feature value '" + v + "'");
        }
      }
      rows.push_back(std::move(row));
      g.node_ids.push_back(id);
    }
    g.n_nodes = static_cast<long>(rows.size());
    g.features.reserve(g.n_nodes * g.feature_dim);
    for (const auto& row : rows) {
      g.features.insert(g.features.end(), row.begin(), row.end());
    }
  }

  const auto idx = id_index(g);
  g.adjacency.assign(g.n_nodes * g.n_nodes, 0);

  {  // edges: TSV of id pairs, set semantics
    std::ifstream in = open_or_throw(edges_path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto tab = t.find('\t');
      if (tab == std::string::npos) {
        parse_fail(edges_path, lineno, "expected 'u<TAB>v'");
      }
      const std::string a = trim(t.substr(0, tab));
      const std::string b = trim(t.substr(tab + 1));
      const auto ia = idx.find(a);
      const auto ib = idx.find(b);
      if (ia == idx.end()) {
        throw ValidationError(edges_path + ":" + std::to_string(lineno) +
                              ": unknown node id '" + a + "'");
      }
      if (ib == idx.end()) {
        throw ValidationError(edges_path + ":" + std::to_string(lineno) +
                              ": unknown node id '" + b + "'");
      }
      if (!g.adjacency[ia->second * g.n_nodes + ib->second]) ++local.n_edges;
      g.adjacency[ia->second * g.n_nodes + ib->second] = 1;
    }
  }

  {  // labels: CSV node_id,class_index; file may be absent
    std::vector<long> label_of(g.n_nodes, -1);
    long max_class = -1;
    if (!labels_path.empty() && std::filesystem::exists(labels_path)) {
      std::ifstream in = open_or_throw(labels_path);
      std::string line;
      long lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (lineno == 1) continue;  // header
        const auto cells = split_csv(t);
        if (cells.size() != 2) {
          parse_fail(labels_path, lineno, "expected 'node_id,class_index'");
        }
        const std::string id = trim(cells[0]);
        const auto it = idx.find(id);
        if (it == idx.end()) {
          throw ValidationError(labels_path + ":" + std::to_string(lineno) +
                                ": unknown node id '" + id + "'");
        }
        long cls = 0;
        try {
          cls = std::stol(trim(cells[1]));
        } catch (const std::exception&) {
          parse_fail(labels_path, lineno, "bad class index '" + cells[1] + "'");
        }
        if (cls < 0 || (declared_classes && cls >= *declared_classes)) {
          throw ValidationError(labels_path + ":" + std::to_string(lineno) +
                                ": class index " + std::to_string(cls) +
                                " out of range");
        }
        label_of[it->second] = cls;
        max_class = std::max(max_class, cls);
      }
    } else {
      local.labels_file_found = false;
    }
    g.label_dim = declared_classes ? *declared_classes : max_class + 1;
    g.labels.assign(g.n_nodes * g.label_dim, 0);
    for (long u = 0; u < g.n_nodes; ++u) {
      if (label_of[u] >= 0) {
        g.labels[u * g.label_dim + label_of[u]] = 1;
      } else {
        ++local.n_unlabeled;
      }
    }
  }

  validate_graph(g);
  if (report) *report = local;
  return g;
}

void save_graph(const Graph& g, const std::string& path, bool preprocessed) {
  json j;
  j["format_version"] = 1;
  j["preprocessed"] = preprocessed;
  j["n_nodes"] = g.n_nodes;
  j["feature_dim"] = g.feature_dim;
  j["label_dim"] = g.label_dim;
  j["node_ids"] = g.node_ids;
  json edges = json::array();
  for (long u = 0; u < g.n_nodes; ++u) {
    for (long v = u + 1; v < g.n_nodes; ++v) {
      if (g.adj(u, v)) edges.push_back({u, v});
    }
  }
  j["edges"] = std::move(edges);
  json feats = json::array();
  for (long u = 0; u < g.n_nodes; ++u) {
    json row = json::array();
    for (long c = 0; c < g.feature_dim; ++c) row.push_back((int)g.feature(u, c));
    feats.push_back(std::move(row));
  }
  j["features"] = std::move(feats);
  json labels = json::array();
  for (long u = 0; u < g.n_nodes; ++u) labels.push_back(g.label_of(u));
  j["labels"] = std::move(labels);
  write_json(j, path);
}

Graph load_saved_graph(const std::string& path, bool* preprocessed) {
  const json j = read_json(path);
  try {
    Graph g;
    g.n_nodes = j.at("n_nodes").get<long>();
    g.feature_dim = j.at("feature_dim").get<long>();
    g.label_dim = j.at("label_dim").get<long>();
    g.node_ids = j.at("node_ids").get<std::vector<std::string>>();
    const bool prep = j.at("preprocessed").get<bool>();
    g.adjacency.assign(g.n_nodes * g.n_nodes, 0);
    for (const auto& e : j.at("edges")) {
      const long u = e.at(0).get<long>(), v = e.at(1).get<long>();
      g.adjacency[u * g.n_nodes + v] = 1;
      g.adjacency[v * g.n_nodes + u] = 1;
    }
    if (prep) {
      for (long u = 0; u < g.n_nodes; ++u) g.adjacency[u * g.n_nodes + u] = 1;
    }
    g.features.reserve(g.n_nodes * g.feature_dim);
    for (const auto& row : j.at("features")) {
      for (const auto& v : row) g.features.push_back(v.get<int>() ? 1 : 0);
    }
    g.labels.assign(g.n_nodes * g.label_dim, 0);
    long u = 0;
    for (const auto& v : j.at("labels")) {
      const long cls = v.get<long>();
      if (cls >= 0) g.labels[u * g.label_dim + cls] = 1;
      ++u;
    }
    validate_graph(g);
    if (preprocessed) *preprocessed = prep;
    return g;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_split(const NodeSplit& split, const Graph& g, const std::string& path) {
  const auto ids = [&g](const std::vector<long>& nodes) {
    json arr = json::array();
    for (const long u : nodes) arr.push_back(g.node_ids[u]);
    return arr;
  };
  json j;
  j["seed"] = split.seed;
  j["train"] = ids(split.train);
  j["validation"] = ids(split.validation);
  j["test"] = ids(split.test);
  write_json(j, path);
}

NodeSplit load_split(const std::string& path, const Graph& g) {
  const json j = read_json(path);
  const auto idx = id_index(g);
  const auto nodes = [&](const char* key) {
    std::vector<long> out;
    for (const auto& v : j.at(key)) {
      const std::string id = v.get<std::string>();
      const auto it = idx.find(id);
      if (it == idx.end()) {
        throw ValidationError(path + ": unknown node id '" + id + "'");
      }
      out.push_back(it->second);
    }
    return out;
  };
  try {
    NodeSplit split;
    split.seed = j.at("seed").get<uint64_t>();
    split.train = nodes("train");
    split.validation = nodes("validation");
    split.test = nodes("test");
    return split;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace sgq
