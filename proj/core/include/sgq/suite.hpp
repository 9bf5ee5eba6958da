#pragma once

#include <string>
#include <vector>

#include "sgq/graph.hpp"
#include "sgq/query.hpp"

namespace sgq {

enum class QueryFamily {
  single_neighbor,
  neighborhood,
  single_link,
  joint_link,
  single_node,
  joint_node,
};

enum class QueryMode {
  semi_inductive,  // paired nodes drawn from train + test
  inductive,       // paired nodes drawn from test only
};

std::string family_name(QueryFamily f);
std::string mode_name(QueryMode m);
QueryFamily parse_family(const std::string& name);
QueryMode parse_mode(const std::string& name);

struct SuiteConfig {
  int n_target_nodes = 100;  // capped by the test-pool size
};

struct QuerySuite {
  QueryFamily family = QueryFamily::single_link;
  QueryMode mode = QueryMode::semi_inductive;
  uint64_t seed = 0;
  std::vector<SubgraphQuery> queries;
  // One note per target node that could not produce a query
  // (isolated, unlabeled, ...).
  std::vector<std::string> skipped;
  // Queries that got fewer negative pairs than requested.
  long short_negative_queries = 0;
};

// Generates one of the six test-query families over target nodes sampled
// from the split's test set. The graph must be preprocessed. Targets
// assert ground-truth values; evidence carries every non-target pair
// among the query nodes with its ground-truth value plus all query-node
// features. Deterministic given the seed.
QuerySuite generate_suite(const Graph& g, const NodeSplit& split,
                          QueryFamily family, QueryMode mode, uint64_t seed,
                          const SuiteConfig& config = {});

// Suite file: family/mode/seed metadata, the queries, and per-query
// ground-truth component labels.
void save_suite(const QuerySuite& suite, const std::string& path);
QuerySuite load_suite(const std::string& path);

}  // namespace sgq
