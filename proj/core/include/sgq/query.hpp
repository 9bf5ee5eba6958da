#pragma once

#include <cstdint>
#include <vector>

#include "sgq/model.hpp"

namespace sgq {

struct LinkAssignment {
  int u = 0;
  int v = 0;
  int value = 1;  // 0 or 1
};

struct FeatureAssignment {
  int node = 0;
  std::vector<uint8_t> bits;
};

struct LabelAssignment {
  int node = 0;
  int label = 0;
};

// Partial assignment over a roster of query nodes (local indices
// 0..n_nodes-1). Evidence labels are carried for completeness but are not
// fed to the encoder. node_origin maps local indices back to the source
// graph for reporting; inference itself is id-free.
struct SubgraphQuery {
  int n_nodes = 0;
  std::vector<LinkAssignment> evidence_links;
  std::vector<FeatureAssignment> evidence_features;
  std::vector<LabelAssignment> evidence_labels;
  std::vector<LinkAssignment> target_links;
  std::vector<LabelAssignment> target_labels;
  std::vector<FeatureAssignment> target_features;
  std::vector<long> node_origin;
};

// Checks indices in range, no duplicate unordered pair within a list, and
// evidence/target link sets disjoint as unordered pairs.
void validate_query(const SubgraphQuery& q);

// Dense encoder inputs with unspecified entries imputed as 0, matching
// the training-time preprocessing: specified links mirrored symmetrically
// and a full self-loop diagonal.
struct EvidenceMatrices {
  long n_nodes = 0;
  long feature_dim = 0;
  std::vector<uint8_t> adjacency;  // n x n
  std::vector<uint8_t> features;   // n x k

  Tensor adjacency_tensor() const;
  Tensor feature_tensor() const;
};

// Throws ValidationError on conflicting duplicate specifications for the
// same pair or node. Idempotent and order-independent in the evidence lists.
EvidenceMatrices build_evidence_matrices(const SubgraphQuery& q,
                                         long feature_dim);

}  // namespace sgq
