#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgq/tensor.hpp"

namespace sgq {

// Attributed labeled graph over dense binary matrices. After preprocess()
// the adjacency is symmetric with a full self-loop diagonal. A label row
// of all zeros means the node is unlabeled.
struct Graph {
  long n_nodes = 0;
  long feature_dim = 0;
  long label_dim = 0;
  std::vector<uint8_t> adjacency;  // n_nodes * n_nodes, row-major
  std::vector<uint8_t> features;   // n_nodes * feature_dim
  std::vector<uint8_t> labels;     // n_nodes * label_dim
  std::vector<std::string> node_ids;  // external identifiers, reporting only
  // Original node indices when this graph was induced from another; empty
  // means identity.
  std::vector<long> origin;

  uint8_t adj(long u, long v) const { return adjacency[u * n_nodes + v]; }
  uint8_t feature(long u, long j) const { return features[u * feature_dim + j]; }
  bool is_labeled(long u) const;
  // Class index of u, or -1 when unlabeled.
  int label_of(long u) const;
  long degree(long u) const;  // excludes the self-loop

  Tensor adjacency_tensor() const;
  Tensor feature_tensor() const;
};

// Throws ValidationError when a structural invariant is broken
// (non-binary entries, asymmetry after preprocessing is not checked here).
void validate_graph(const Graph& g);

// max(A, A^T) elementwise, then ones on the diagonal; X and L unchanged.
// Idempotent.
Graph preprocess(const Graph& g);

// Rows/columns restricted to `nodes` in the given order; records the
// mapping back to the original indices.
Graph induced_subgraph(const Graph& g, const std::vector<long>& nodes);

struct NodeSplit {
  std::vector<long> train;
  std::vector<long> validation;
  std::vector<long> test;
  uint64_t seed = 0;
};

// 70/10/20 train/validation/test partition: uniform random permutation,
// prefix slicing, sizes round(0.7N) and round(0.1N) with the test set
// taking the remainder. Deterministic given the seed. Requires N >= 10.
NodeSplit split_nodes(const Graph& g, uint64_t seed);

}  // namespace sgq
