#include "sgq/suite.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "sgq/errors.hpp"
#include "sgq/query_io.hpp"
#include "sgq/rng.hpp"

namespace sgq {

namespace {

using nlohmann::json;

bool is_single(QueryFamily f) {
  return f == QueryFamily::single_neighbor || f == QueryFamily::single_link ||
         f == QueryFamily::single_node;
}

bool is_node_family(QueryFamily f) {
  return f == QueryFamily::single_node || f == QueryFamily::joint_node;
}

bool has_label_targets(QueryFamily f) {
  return f != QueryFamily::single_link && f != QueryFamily::joint_link;
}

}  // namespace

std::string family_name(QueryFamily f) {
  switch (f) {
    case QueryFamily::single_neighbor: return "single_neighbor";
    case QueryFamily::neighborhood: return "neighborhood";
    case QueryFamily::single_link: return "single_link";
    case QueryFamily::joint_link: return "joint_link";
    case QueryFamily::single_node: return "single_node";
    case QueryFamily::joint_node: return "joint_node";
  }
  throw ValidationError("unknown query family");
}

std::string mode_name(QueryMode m) {
  return m == QueryMode::semi_inductive ? "semi_inductive" : "inductive";
}

QueryFamily parse_family(const std::string& name) {
  for (const QueryFamily f :
       {QueryFamily::single_neighbor, QueryFamily::neighborhood,
        QueryFamily::single_link, QueryFamily::joint_link,
        QueryFamily::single_node, QueryFamily::joint_node}) {
    if (family_name(f) == name) return f;
  }
  throw ValidationError("unknown query family '" + name + "'");
}

QueryMode parse_mode(const std::string& name) {
  if (name == "semi_inductive") return QueryMode::semi_inductive;
  if (name == "inductive") return QueryMode::inductive;
  throw ValidationError("unknown query mode '" + name + "'");
}

QuerySuite generate_suite(const Graph& g, const NodeSplit& split,
                          QueryFamily family, QueryMode mode, uint64_t seed,
                          const SuiteConfig& config) {
  QuerySuite suite;
  suite.family = family;
  suite.mode = mode;
  suite.seed = seed;

  std::vector<char> in_pool(g.n_nodes, 0);
  for (const long v : split.test) in_pool[v] = 1;
  if (mode == QueryMode::semi_inductive) {
    for (const long v : split.train) in_pool[v] = 1;
  }
  std::vector<long> pool;
  for (long v = 0; v < g.n_nodes; ++v) {
    if (in_pool[v]) pool.push_back(v);
  }

  Rng root = Rng(seed).split("query-suite");
  std::vector<long> targets = split.test;
  {
    Rng shuffle_rng = root.split("targets");
    shuffle_rng.shuffle(targets);
  }
  const size_t n_targets =
      std::min<size_t>(targets.size(), static_cast<size_t>(config.n_target_nodes));
  targets.resize(n_targets);

  for (const long u : targets) {
    Rng rng = root.split("node").split(static_cast<uint64_t>(u));

    std::vector<long> nbr_pool;
    for (const long v : pool) {
      if (v != u && g.adj(u, v)) nbr_pool.push_back(v);
    }
    if (nbr_pool.empty()) {
      suite.skipped.push_back("node " + std::to_string(u) +
                              ": no positive neighbor in pool");
      continue;
    }
    if (is_node_family(family) && family == QueryFamily::single_node &&
        !g.is_labeled(u)) {
      suite.skipped.push_back("node " + std::to_string(u) + ": unlabeled");
      continue;
    }

    std::vector<long> positives, negatives;
    if (is_single(family)) {
      positives.push_back(nbr_pool[rng.uniform_int(nbr_pool.size())]);
    } else {
      positives = nbr_pool;
    }
    // Rejection sampling against the ground-truth adjacency.
    {
      std::set<long> chosen;
      const size_t want = positives.size();
      const long max_attempts = 200 + 60 * static_cast<long>(want);
      for (long attempt = 0;
           attempt < max_attempts && chosen.size() < want; ++attempt) {
        const long v = pool[rng.uniform_int(pool.size())];
        if (v != u && !g.adj(u, v)) chosen.insert(v);
      }
      negatives.assign(chosen.begin(), chosen.end());
    }
    if (negatives.empty()) {
      suite.skipped.push_back("node " + std::to_string(u) +
                              ": no negative pool");
      continue;
    }
    if (negatives.size() < positives.size()) ++suite.short_negative_queries;

    SubgraphQuery q;
    std::vector<long> roster;
    roster.push_back(u);
    roster.insert(roster.end(), positives.begin(), positives.end());
    roster.insert(roster.end(), negatives.begin(), negatives.end());
    q.n_nodes = static_cast<int>(roster.size());
    q.node_origin = roster;
    const auto local = [&roster](long global) {
      return static_cast<int>(
          std::find(roster.begin(), roster.end(), global) - roster.begin());
    };

    std::set<std::pair<int, int>> target_pairs;
    if (!is_node_family(family)) {
      for (const long v : positives) {
        q.target_links.push_back({0, local(v), 1});
        target_pairs.insert({0, local(v)});
      }
      for (const long v : negatives) {
        q.target_links.push_back({0, local(v), 0});
        target_pairs.insert({0, local(v)});
      }
    }

    if (has_label_targets(family)) {
      if (is_single(family)) {
        if (g.is_labeled(u)) q.target_labels.push_back({0, g.label_of(u)});
      } else {
        for (size_t i = 1; i < roster.size(); ++i) {
          if (g.is_labeled(roster[i])) {
            q.target_labels.push_back({static_cast<int>(i),
                                       g.label_of(roster[i])});
          }
        }
      }
      if (is_node_family(family) && q.target_labels.empty()) {
        suite.skipped.push_back("node " + std::to_string(u) +
                                ": no labeled label targets");
        continue;
      }
    }

    for (size_t i = 0; i < roster.size(); ++i) {
      for (size_t j = i + 1; j < roster.size(); ++j) {
        const auto pair = std::make_pair(static_cast<int>(i), static_cast<int>(j));
        const auto rpair = std::make_pair(static_cast<int>(j), static_cast<int>(i));
        if (target_pairs.count(pair) || target_pairs.count(rpair)) continue;
        q.evidence_links.push_back({pair.first, pair.second,
                                    g.adj(roster[i], roster[j]) ? 1 : 0});
      }
    }
    for (size_t i = 0; i < roster.size(); ++i) {
      FeatureAssignment f;
      f.node = static_cast<int>(i);
      f.bits.assign(g.features.begin() + roster[i] * g.feature_dim,
                    g.features.begin() + (roster[i] + 1) * g.feature_dim);
      q.evidence_features.push_back(std::move(f));
    }

    validate_query(q);
    suite.queries.push_back(std::move(q));
  }
  return suite;
}

void save_suite(const QuerySuite& suite, const std::string& path) {
  json j;
  j["format_version"] = 1;
  j["family"] = family_name(suite.family);
  j["mode"] = mode_name(suite.mode);
  j["seed"] = suite.seed;
  j["short_negative_queries"] = suite.short_negative_queries;
  j["skipped"] = suite.skipped;
  json queries = json::array();
  json truth = json::array();
  for (const SubgraphQuery& q : suite.queries) {
    queries.push_back(json::parse(query_to_json_text(q)));
    json link_truth = json::array();
    for (const auto& l : q.target_links) link_truth.push_back(l.value);
    json label_truth = json::array();
    for (const auto& l : q.target_labels) label_truth.push_back(l.label);
    truth.push_back({{"links", std::move(link_truth)},
                     {"labels", std::move(label_truth)}});
  }
  j["queries"] = std::move(queries);
  j["ground_truth"] = std::move(truth);
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << j.dump(2) << "\n";
}

QuerySuite load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    QuerySuite suite;
    suite.family = parse_family(j.at("family").get<std::string>());
    suite.mode = parse_mode(j.at("mode").get<std::string>());
    suite.seed = j.at("seed").get<uint64_t>();
    suite.short_negative_queries = j.at("short_negative_queries").get<long>();
    suite.skipped = j.at("skipped").get<std::vector<std::string>>();
    for (const auto& qj : j.at("queries")) {
      suite.queries.push_back(query_from_json_text(qj.dump(), path));
    }
    return suite;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace sgq
