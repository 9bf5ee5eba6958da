#pragma once

#include <cstdint>

#include "sgq/graph.hpp"
#include "sgq/model.hpp"

namespace sgq {

enum class LinkBalance {
  // Positive adjacency entries reweighted by (#zeros / #ones) so sparse
  // graphs do not collapse to all-zero predictions.
  reweighted,
  plain,
};

struct TrainConfig {
  long epochs = 300;
  double learning_rate = 1e-2;
  uint64_t seed = 0;
  // Negative value means 1/N (per-node normalization).
  double kl_weight = -1.0;
  LinkBalance link_balance = LinkBalance::reweighted;
  // Ablation switches forcing the corresponding weight to zero.
  bool ablate_alpha = false;
  bool ablate_beta = false;
  bool ablate_gamma = false;
  long embed_dim = 128;
  long hidden_dim = 128;
};

// Per-entry-normalized log-likelihood terms shared by the training loss
// and the tuner's validation objective.
struct ReconstructionTerms {
  Tensor link_ll;     // mean over all n^2 adjacency entries
  Tensor feature_ll;  // mean over all n*k feature entries
  Tensor label_ll;    // mean over labeled rows; zero when none
};

ReconstructionTerms reconstruction_terms(const VgaePlusModel& model,
                                         const Graph& graph, const Tensor& z,
                                         LinkBalance balance);

struct ElboBreakdown {
  Tensor total;       // scalar loss, differentiable
  double link_ll = 0;     // per-entry mean Bernoulli log-likelihood
  double feature_ll = 0;  // per-entry mean Bernoulli log-likelihood
  double label_ll = 0;    // per-labeled-row mean categorical log-likelihood
  double kl = 0;          // unscaled KL to the standard normal prior
  double kl_weight = 0;
};

// Weighted negative ELBO:
//   -[alpha * LL_links + beta * LL_features + gamma * LL_labels]
//   + kl_weight * KL(q || N(0, I)).
// Every log-likelihood term is normalized by its entry count before
// weighting; zero-weight terms never enter the differentiable total (they
// are still reported in the breakdown). Labels enter only for labeled rows.
ElboBreakdown elbo_loss(const VgaePlusModel& model, const Graph& graph,
                        const Tensor& sampled_z, const Posterior& posterior,
                        const TrainConfig& config);

// Effective weights after applying the config's ablation switches.
ReconWeights effective_weights(const ReconWeights& w, const TrainConfig& c);

}  // namespace sgq
