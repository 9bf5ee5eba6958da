#pragma once

#include <vector>

#include "sgq/graph.hpp"
#include "sgq/model.hpp"
#include "sgq/query.hpp"
#include "sgq/rng.hpp"

// Shared test fixtures: the six-node worked example queries (0-indexed)
// and small random graphs/models.
namespace fixtures {

// Six query nodes; every pair specified except (1,3) and (4,5); features
// of nodes 2 and 4 unspecified.
inline sgq::SubgraphQuery worked_evidence_query() {
  sgq::SubgraphQuery q;
  q.n_nodes = 6;
  q.evidence_links = {
      {0, 1, 1}, {0, 2, 1}, {0, 3, 0}, {0, 4, 1}, {0, 5, 0},
      {1, 2, 1}, {1, 4, 0}, {1, 5, 0},
      {2, 3, 0}, {2, 4, 0}, {2, 5, 1},
      {3, 4, 0}, {3, 5, 0},
  };
  q.evidence_features = {
      {0, {1, 1}}, {1, {0, 1}}, {3, {1, 0}}, {5, {1, 1}},
  };
  return q;
}

inline std::vector<std::vector<int>> worked_evidence_adjacency() {
  return {
      {1, 1, 1, 0, 1, 0},
      {1, 1, 1, 0, 0, 0},
      {1, 1, 1, 0, 0, 1},
      {0, 0, 0, 1, 0, 0},
      {1, 0, 0, 0, 1, 0},
      {0, 0, 1, 0, 0, 1},
  };
}

inline std::vector<std::vector<int>> worked_evidence_features() {
  return {{1, 1}, {0, 1}, {0, 0}, {1, 0}, {0, 0}, {1, 1}};
}

// Neighborhood query around node 3: two positive and two negative target
// links plus the labels of the four paired nodes; pairs (1,3) and (4,5)
// stay unspecified in the evidence.
inline sgq::SubgraphQuery neighborhood_query() {
  sgq::SubgraphQuery q;
  q.n_nodes = 6;
  q.target_links = {{0, 3, 1}, {4, 3, 1}, {2, 3, 0}, {5, 3, 0}};
  q.target_labels = {{0, 0}, {2, 0}, {4, 1}, {5, 1}};
  q.evidence_links = {
      {0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 5, 1}, {0, 4, 1},
      {2, 4, 0}, {1, 5, 0}, {1, 4, 0}, {0, 5, 0},
  };
  for (int u = 0; u < 6; ++u) {
    q.evidence_features.push_back({u, {static_cast<uint8_t>(u % 2), 1}});
  }
  return q;
}

// Single-neighbor query around node 3: one positive link, one negative
// link, and the label of node 3.
inline sgq::SubgraphQuery single_neighbor_query() {
  sgq::SubgraphQuery q;
  q.n_nodes = 6;
  q.target_links = {{4, 3, 1}, {2, 3, 0}};
  q.target_labels = {{3, 1}};
  q.evidence_links = {
      {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {2, 5, 1}, {0, 4, 1},
      {2, 4, 0}, {1, 5, 0}, {3, 5, 0}, {1, 4, 0}, {0, 5, 0},
  };
  for (int u = 0; u < 6; ++u) {
    q.evidence_features.push_back({u, {static_cast<uint8_t>(u % 2), 1}});
  }
  return q;
}

// Single-node query: every link moved into the evidence, only the label
// of node 3 remains a target.
inline sgq::SubgraphQuery single_node_query() {
  sgq::SubgraphQuery q;
  q.n_nodes = 6;
  q.target_labels = {{3, 1}};
  q.evidence_links = {
      {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {2, 5, 1}, {0, 4, 1},
      {3, 4, 1},
      {2, 4, 0}, {1, 5, 0}, {2, 3, 0}, {3, 5, 0}, {1, 4, 0}, {0, 5, 0},
  };
  for (int u = 0; u < 6; ++u) {
    q.evidence_features.push_back({u, {static_cast<uint8_t>(u % 2), 1}});
  }
  return q;
}

// Random connected-ish binary graph for gradient and equivariance tests.
inline sgq::Graph random_graph(long n, long k, long l, uint64_t seed,
                               double edge_p = 0.3) {
  sgq::Rng rng(seed);
  sgq::Graph g;
  g.n_nodes = n;
  g.feature_dim = k;
  g.label_dim = l;
  g.adjacency.assign(n * n, 0);
  g.features.assign(n * k, 0);
  g.labels.assign(n * l, 0);
  for (long u = 0; u < n; ++u) {
    for (long v = u + 1; v < n; ++v) {
      if (rng.uniform() < edge_p) {
        g.adjacency[u * n + v] = 1;
        g.adjacency[v * n + u] = 1;
      }
    }
    g.adjacency[u * n + u] = 1;
    for (long j = 0; j < k; ++j) {
      g.features[u * k + j] = rng.uniform() < 0.5 ? 1 : 0;
    }
    if (l > 0 && rng.uniform() < 0.9) {  // a few unlabeled rows
      g.labels[u * l + rng.uniform_int(l)] = 1;
    }
    g.node_ids.push_back("n" + std::to_string(u));
  }
  return g;
}

inline sgq::VgaePlusModel random_model(long k, long l, long d, long hidden,
                                       uint64_t seed) {
  sgq::ModelDims dims;
  dims.feature_dim = k;
  dims.label_dim = l;
  dims.embed_dim = d;
  dims.hidden_dim = hidden;
  return sgq::VgaePlusModel(dims, {}, sgq::Rng(seed));
}

}  // namespace fixtures
