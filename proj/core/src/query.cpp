#include "sgq/query.hpp"

#include <map>
#include <set>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

std::pair<int, int> unordered(int u, int v) {
  return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
}

// Re-listing the same evidence assignment is idempotent; a duplicate pair
// is an error only when the values conflict (or in a target list, always,
// where it would double-count a component).
void check_link_list(const std::vector<LinkAssignment>& links, int n,
                     const char* kind, bool allow_repeats,
                     std::set<std::pair<int, int>>* pairs) {
  std::map<std::pair<int, int>, int> values;
  for (const LinkAssignment& link : links) {
    if (link.u < 0 || link.u >= n || link.v < 0 || link.v >= n) {
      throw ValidationError(std::string(kind) + " link (" +
                            std::to_string(link.u) + "," + std::to_string(link.v) +
                            ") out of range for " + std::to_string(n) + " nodes");
    }
    if (link.u == link.v) {
      throw ValidationError(std::string(kind) + " link is a self-pair (" +
                            std::to_string(link.u) + ")");
    }
    if (link.value != 0 && link.value != 1) {
      throw ValidationError(std::string(kind) + " link value must be 0 or 1");
    }
    const auto key = unordered(link.u, link.v);
    const auto [it, inserted] = values.emplace(key, link.value);
    if (!inserted && (!allow_repeats || it->second != link.value)) {
      throw ValidationError(std::string(kind) + " links specify pair (" +
                            std::to_string(link.u) + "," + std::to_string(link.v) +
                            ") twice" +
                            (it->second != link.value ? " with conflicting values"
                                                      : ""));
    }
    pairs->insert(key);
  }
}

void check_node(int node, int n, const char* what) {
  if (node < 0 || node >= n) {
    throw ValidationError(std::string(what) + " node " + std::to_string(node) +
                          " out of range for " + std::to_string(n) + " nodes");
  }
}

}  // namespace

void validate_query(const SubgraphQuery& q) {
  if (q.n_nodes <= 0) throw ValidationError("query: n_nodes must be positive");

  std::set<std::pair<int, int>> evidence_pairs;
  std::set<std::pair<int, int>> target_pairs;
  check_link_list(q.evidence_links, q.n_nodes, "evidence", /*allow_repeats=*/true,
                  &evidence_pairs);
  check_link_list(q.target_links, q.n_nodes, "target", /*allow_repeats=*/false,
                  &target_pairs);
  for (const auto& pair : target_pairs) {
    if (evidence_pairs.count(pair)) {
      throw ValidationError("query: link (" + std::to_string(pair.first) + "," +
                            std::to_string(pair.second) +
                            ") appears in both evidence and target");
    }
  }

  std::map<int, const std::vector<uint8_t>*> feature_nodes;
  for (const FeatureAssignment& f : q.evidence_features) {
    check_node(f.node, q.n_nodes, "evidence feature");
    const auto [it, inserted] = feature_nodes.emplace(f.node, &f.bits);
    if (!inserted && *it->second != f.bits) {
      throw ValidationError("query: conflicting evidence features for node " +
                            std::to_string(f.node));
    }
  }
  for (const FeatureAssignment& f : q.target_features) {
    check_node(f.node, q.n_nodes, "target feature");
  }
  for (const LabelAssignment& l : q.evidence_labels) {
    check_node(l.node, q.n_nodes, "evidence label");
  }
  for (const LabelAssignment& l : q.target_labels) {
    check_node(l.node, q.n_nodes, "target label");
  }
}

Tensor EvidenceMatrices::adjacency_tensor() const {
  std::vector<double> data(adjacency.begin(), adjacency.end());
  return Tensor::from_data(n_nodes, n_nodes, std::move(data));
}

Tensor EvidenceMatrices::feature_tensor() const {
  std::vector<double> data(features.begin(), features.end());
  return Tensor::from_data(n_nodes, feature_dim, std::move(data));
}

EvidenceMatrices build_evidence_matrices(const SubgraphQuery& q,
                                         long feature_dim) {
  validate_query(q);
  const long n = q.n_nodes;
  EvidenceMatrices ev;
  ev.n_nodes = n;
  ev.feature_dim = feature_dim;
  ev.adjacency.assign(n * n, 0);
  ev.features.assign(n * feature_dim, 0);

  for (const LinkAssignment& link : q.evidence_links) {
    ev.adjacency[link.u * n + link.v] = static_cast<uint8_t>(link.value);
    ev.adjacency[link.v * n + link.u] = static_cast<uint8_t>(link.value);
  }
  for (long u = 0; u < n; ++u) ev.adjacency[u * n + u] = 1;

  for (const FeatureAssignment& f : q.evidence_features) {
    if (static_cast<long>(f.bits.size()) != feature_dim) {
      throw ValidationError("evidence: feature vector for node " +
                            std::to_string(f.node) + " has " +
                            std::to_string(f.bits.size()) + " bits, expected " +
                            std::to_string(feature_dim));
    }
    for (long j = 0; j < feature_dim; ++j) {
      if (f.bits[j] > 1) {
        throw ValidationError("evidence: non-binary feature bit for node " +
                              std::to_string(f.node));
      }
      ev.features[f.node * feature_dim + j] = f.bits[j];
    }
  }
  return ev;
}

}  // namespace sgq
