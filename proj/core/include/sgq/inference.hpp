#pragma once

#include <string>
#include <vector>

#include "sgq/query.hpp"

namespace sgq {

struct LinkProbability {
  int u = 0;
  int v = 0;
  int value = 1;
  double p_value = 0;  // probability of the asserted value
  double p_link = 0;   // raw P(link = 1)
};

struct LabelProbability {
  int node = 0;
  int label = 0;
  double p_label = 0;  // probability of the asserted class
  std::vector<double> distribution;
};

struct FeatureProbability {
  int node = 0;
  double p_vector = 0;  // product over dimensions of the asserted bits
  std::vector<double> per_dim;  // P(bit = 1) per dimension
};

struct QueryAnswer {
  std::vector<LinkProbability> links;
  std::vector<LabelProbability> labels;
  std::vector<FeatureProbability> features;
  double joint_prob = 1.0;
  double joint_log_prob = 0.0;
  std::string mode;  // "deterministic" or "mc"
  long samples = 0;  // for mc mode
  bool empty_target = false;
};

// Encoder posterior over the query nodes from the 0-imputed evidence
// matrices; the query may be much smaller than the training graph.
Posterior query_posterior(const VgaePlusModel& model,
                          const EvidenceMatrices& evidence);

// Product of independent decoder probabilities at fixed embeddings z.
// An empty target set yields the empty product 1 with empty_target set.
QueryAnswer target_probability(const Tensor& z, const SubgraphQuery& q,
                               const VgaePlusModel& model);

// Scores targets at the posterior mean embeddings.
QueryAnswer infer_deterministic(const VgaePlusModel& model,
                                const SubgraphQuery& q);
QueryAnswer infer_deterministic_from_posterior(const VgaePlusModel& model,
                                               const SubgraphQuery& q,
                                               const Posterior& posterior);

// Averages joint and per-component probabilities over `samples`
// reparameterized posterior draws.
QueryAnswer infer_mc(const VgaePlusModel& model, const SubgraphQuery& q,
                     long samples, uint64_t seed);
QueryAnswer infer_mc_from_posterior(const VgaePlusModel& model,
                                    const SubgraphQuery& q,
                                    const Posterior& posterior, long samples,
                                    uint64_t seed);

}  // namespace sgq
