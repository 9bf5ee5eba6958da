#include "sgq/train.hpp"

#include <cmath>
#include <fstream>

#include "sgq/adam.hpp"
#include "sgq/errors.hpp"
#include "sgq/gaussian.hpp"

namespace sgq {

TrainResult train(const Graph& train_graph, const TrainConfig& config,
                  const ReconWeights& weights) {
  if (config.epochs < 1) throw ValidationError("train: epochs must be >= 1");
  if (config.learning_rate <= 0) {
    throw ValidationError("train: learning_rate must be > 0");
  }

  ModelDims dims;
  dims.feature_dim = train_graph.feature_dim;
  dims.label_dim = train_graph.label_dim;
  dims.embed_dim = config.embed_dim;
  dims.hidden_dim = config.hidden_dim;

  Rng root(config.seed);
  VgaePlusModel model(dims, weights, root.split("init"));
  AdamConfig adam_cfg;
  adam_cfg.learning_rate = config.learning_rate;
  AdamOptimizer optimizer(model.parameters(), adam_cfg);

  const Tensor adjacency = train_graph.adjacency_tensor();
  const Tensor features = train_graph.feature_tensor();
  Rng epoch_rng = root.split("epoch-noise");

  TrainResult result{std::move(model), {}};
  result.trace.reserve(config.epochs);
  for (long epoch = 0; epoch < config.epochs; ++epoch) {
    Posterior post = result.model.encode(adjacency, features);
    Rng sample_rng = epoch_rng.split(static_cast<uint64_t>(epoch));
    Tensor z = sample_gaussian(post.mu, post.log_sigma, sample_rng);
    ElboBreakdown parts = elbo_loss(result.model, train_graph, z, post, config);
    const double loss = parts.total.scalar();
    if (!std::isfinite(loss)) {
      throw NumericError("train: non-finite loss at epoch " +
                         std::to_string(epoch));
    }
    parts.total.backward();
    optimizer.step();
    result.trace.push_back({epoch, loss, parts.link_ll, parts.feature_ll,
                            parts.label_ll, parts.kl});
  }
  return result;
}

void save_trace_csv(const std::vector<EpochStats>& trace,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << "epoch,total_loss,link_ll,feature_ll,label_ll,kl\n";
  out.precision(17);
  for (const EpochStats& row : trace) {
    out << row.epoch << ',' << row.total_loss << ',' << row.link_ll << ','
        << row.feature_ll << ',' << row.label_ll << ',' << row.kl << '\n';
  }
}

}  // namespace sgq
