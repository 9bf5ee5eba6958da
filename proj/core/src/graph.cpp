#include "sgq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sgq/errors.hpp"
#include "sgq/rng.hpp"

namespace sgq {

bool Graph::is_labeled(long u) const {
  for (long c = 0; c < label_dim; ++c) {
    if (labels[u * label_dim + c]) return true;
  }
  return false;
}

int Graph::label_of(long u) const {
  for (long c = 0; c < label_dim; ++c) {
    if (labels[u * label_dim + c]) return static_cast<int>(c);
  }
  return -1;
}

long Graph::degree(long u) const {
  long d = 0;
  for (long v = 0; v < n_nodes; ++v) {
    if (v != u && adj(u, v)) ++d;
  }
  return d;
}

Tensor Graph::adjacency_tensor() const {
  std::vector<double> data(adjacency.begin(), adjacency.end());
  return Tensor::from_data(n_nodes, n_nodes, std::move(data));
}

Tensor Graph::feature_tensor() const {
  std::vector<double> data(features.begin(), features.end());
  return Tensor::from_data(n_nodes, feature_dim, std::move(data));
}

void validate_graph(const Graph& g) {
  const long n = g.n_nodes;
  if (static_cast<long>(g.adjacency.size()) != n * n ||
      static_cast<long>(g.features.size()) != n * g.feature_dim ||
      static_cast<long>(g.labels.size()) != n * g.label_dim) {
    throw ValidationError("graph: matrix sizes do not match dimensions");
  }
  for (const uint8_t v : g.adjacency) {
    if (v > 1) throw ValidationError("graph: non-binary adjacency entry");
  }
  for (const uint8_t v : g.features) {
    if (v > 1) throw ValidationError("graph: non-binary feature entry");
  }
  for (long u = 0; u < n; ++u) {
    long row_sum = 0;
    for (long c = 0; c < g.label_dim; ++c) row_sum += g.labels[u * g.label_dim + c];
    if (row_sum > 1) {
      throw ValidationError("graph: label row " + std::to_string(u) +
                            " is not one-hot");
    }
  }
}

Graph preprocess(const Graph& g) {
  Graph out = g;
  const long n = g.n_nodes;
  for (long u = 0; u < n; ++u) {
    for (long v = u + 1; v < n; ++v) {
      const uint8_t m = std::max(g.adj(u, v), g.adj(v, u));
      out.adjacency[u * n + v] = m;
      out.adjacency[v * n + u] = m;
    }
    out.adjacency[u * n + u] = 1;
  }
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<long>& nodes) {
  std::unordered_set<long> seen;
  for (const long u : nodes) {
    if (u < 0 || u >= g.n_nodes) {
      throw ValidationError("induced_subgraph: node index " +
                            std::to_string(u) + " out of range");
    }
    if (!seen.insert(u).second) {
      throw ValidationError("induced_subgraph: duplicate node index " +
                            std::to_string(u));
    }
  }
  const long m = static_cast<long>(nodes.size());
  Graph out;
  out.n_nodes = m;
  out.feature_dim = g.feature_dim;
  out.label_dim = g.label_dim;
  out.adjacency.assign(m * m, 0);
  out.features.assign(m * g.feature_dim, 0);
  out.labels.assign(m * g.label_dim, 0);
  out.node_ids.reserve(m);
  out.origin.reserve(m);
  for (long i = 0; i < m; ++i) {
    const long u = nodes[i];
    for (long j = 0; j < m; ++j) out.adjacency[i * m + j] = g.adj(u, nodes[j]);
    std::copy(g.features.begin() + u * g.feature_dim,
              g.features.begin() + (u + 1) * g.feature_dim,
              out.features.begin() + i * g.feature_dim);
    std::copy(g.labels.begin() + u * g.label_dim,
              g.labels.begin() + (u + 1) * g.label_dim,
              out.labels.begin() + i * g.label_dim);
    out.node_ids.push_back(u < static_cast<long>(g.node_ids.size())
                               ? g.node_ids[u]
                               : std::to_string(u));
    out.origin.push_back(g.origin.empty() ? u : g.origin[u]);
  }
  return out;
}

NodeSplit split_nodes(const Graph& g, uint64_t seed) {
  const long n = g.n_nodes;
  if (n < 10) throw ValidationError("split_nodes: graph too small to split");

  std::vector<long> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = i;
  Rng rng = Rng(seed).split("node-split");
  rng.shuffle(perm);

  const long n_train = static_cast<long>(std::floor(0.70 * n + 0.5));
  const long n_val = static_cast<long>(std::floor(0.10 * n + 0.5));

  NodeSplit split;
  split.seed = seed;
  split.train.assign(perm.begin(), perm.begin() + n_train);
  split.validation.assign(perm.begin() + n_train, perm.begin() + n_train + n_val);
  split.test.assign(perm.begin() + n_train + n_val, perm.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace sgq
