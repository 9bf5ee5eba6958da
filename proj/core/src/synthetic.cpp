#include "sgq/synthetic.hpp"

#include "sgq/errors.hpp"
#include "sgq/rng.hpp"

namespace sgq {

Graph planted_partition(const PlantedPartitionConfig& config, uint64_t seed) {
  if (config.nodes < config.blocks || config.blocks < 1) {
    throw ValidationError("planted_partition: need nodes >= blocks >= 1");
  }
  const long n = config.nodes;
  Graph g;
  g.n_nodes = n;
  g.feature_dim = config.feature_bits;
  g.label_dim = config.blocks;
  g.adjacency.assign(n * n, 0);
  g.features.assign(n * config.feature_bits, 0);
  g.labels.assign(n * config.blocks, 0);

  const auto block_of = [&](long u) {
    return static_cast<int>(u * config.blocks / n);
  };
  const auto bit_block = [&](long j) {
    return static_cast<int>(j * config.blocks / config.feature_bits);
  };

  Rng root(seed);
  Rng edge_rng = root.split("edges");
  for (long u = 0; u < n; ++u) {
    for (long v = u + 1; v < n; ++v) {
      const double p =
          block_of(u) == block_of(v) ? config.p_intra : config.p_inter;
      if (edge_rng.uniform() < p) {
        g.adjacency[u * n + v] = 1;
        g.adjacency[v * n + u] = 1;
      }
    }
  }
  Rng feat_rng = root.split("features");
  for (long u = 0; u < n; ++u) {
    for (long j = 0; j < config.feature_bits; ++j) {
      const double p =
          bit_block(j) == block_of(u) ? config.feature_on : config.feature_off;
      g.features[u * config.feature_bits + j] = feat_rng.uniform() < p ? 1 : 0;
    }
    g.labels[u * config.blocks + block_of(u)] = 1;
    g.node_ids.push_back("n" + std::to_string(u));
  }
  return g;
}

}  // namespace sgq
