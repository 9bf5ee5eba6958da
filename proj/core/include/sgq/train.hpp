#pragma once

#include <vector>

#include "sgq/loss.hpp"

namespace sgq {

struct EpochStats {
  long epoch = 0;
  double total_loss = 0;
  double link_ll = 0;
  double feature_ll = 0;
  double label_ll = 0;
  double kl = 0;
};

struct TrainResult {
  VgaePlusModel model;
  std::vector<EpochStats> trace;
};

// Full-batch Adam on the weighted ELBO with one reparameterized posterior
// sample per epoch. Deterministic given config.seed. Throws NumericError
// naming the epoch if the loss goes non-finite.
TrainResult train(const Graph& train_graph, const TrainConfig& config,
                  const ReconWeights& weights);

void save_trace_csv(const std::vector<EpochStats>& trace,
                    const std::string& path);

}  // namespace sgq
