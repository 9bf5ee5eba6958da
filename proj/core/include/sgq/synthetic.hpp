#pragma once

#include <cstdint>

#include "sgq/graph.hpp"

namespace sgq {

// Planted-partition generator: equal contiguous blocks, intra-block edge
// probability p_intra, inter-block p_inter, block-aligned noisy binary
// features, and the block index as the node label.
struct PlantedPartitionConfig {
  long nodes = 200;
  int blocks = 2;
  double p_intra = 0.3;
  double p_inter = 0.02;
  long feature_bits = 8;
  // P(bit on) when the bit's slice matches / does not match the block.
  double feature_on = 0.9;
  double feature_off = 0.1;
};

Graph planted_partition(const PlantedPartitionConfig& config, uint64_t seed);

}  // namespace sgq
