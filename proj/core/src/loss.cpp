#include "sgq/loss.hpp"

#include "sgq/errors.hpp"
#include "sgq/gaussian.hpp"

namespace sgq {

namespace {

// Mean Bernoulli log-likelihood of binary targets under logits, with the
// positive class scaled by pos_weight. Uses softplus so saturated logits
// stay finite: log p(y=1) = -softplus(-s), log p(y=0) = -softplus(s).
Tensor bernoulli_ll_mean(const Tensor& logits, const std::vector<uint8_t>& y,
                         double pos_weight) {
  const long n = logits.size();
  std::vector<double> pos_mask(n, 0.0), neg_mask(n, 0.0);
  for (long i = 0; i < n; ++i) {
    if (y[i]) {
      pos_mask[i] = pos_weight;
    } else {
      neg_mask[i] = 1.0;
    }
  }
  Tensor pos = Tensor::from_data(logits.rows(), logits.cols(), std::move(pos_mask));
  Tensor neg = Tensor::from_data(logits.rows(), logits.cols(), std::move(neg_mask));
  Tensor nll = add(elementwise_mul(pos, softplus(scale(logits, -1.0))),
                   elementwise_mul(neg, softplus(logits)));
  return scale(sum(nll), -1.0 / static_cast<double>(n));
}

}  // namespace

ReconstructionTerms reconstruction_terms(const VgaePlusModel& model,
                                         const Graph& graph, const Tensor& z,
                                         LinkBalance balance) {
  const long n = graph.n_nodes;
  if (z.rows() != n) {
    throw ShapeError("reconstruction_terms: z has " + std::to_string(z.rows()) +
                     " rows for " + std::to_string(n) + " nodes");
  }

  double pos_weight = 1.0;
  if (balance == LinkBalance::reweighted) {
    long ones = 0;
    for (const uint8_t a : graph.adjacency) ones += a;
    const long zeros = n * n - ones;
    if (ones > 0 && zeros > 0) {
      pos_weight = static_cast<double>(zeros) / static_cast<double>(ones);
    }
  }

  ReconstructionTerms terms;
  terms.link_ll =
      bernoulli_ll_mean(model.link_logits(z), graph.adjacency, pos_weight);
  terms.feature_ll =
      bernoulli_ll_mean(model.feature_logits(z), graph.features, 1.0);

  std::vector<long> labeled;
  for (long u = 0; u < n; ++u) {
    if (graph.is_labeled(u)) labeled.push_back(u);
  }
  terms.label_ll = Tensor::zeros(1, 1);
  if (!labeled.empty() && graph.label_dim > 0) {
    Tensor lsm = log_softmax_rows(model.label_logits(gather_rows(z, labeled)));
    std::vector<double> onehot(labeled.size() * graph.label_dim, 0.0);
    for (size_t i = 0; i < labeled.size(); ++i) {
      for (long c = 0; c < graph.label_dim; ++c) {
        onehot[i * graph.label_dim + c] =
            graph.labels[labeled[i] * graph.label_dim + c];
      }
    }
    Tensor mask = Tensor::from_data(static_cast<long>(labeled.size()),
                                    graph.label_dim, std::move(onehot));
    terms.label_ll = scale(sum(elementwise_mul(lsm, mask)),
                           1.0 / static_cast<double>(labeled.size()));
  }
  return terms;
}

ReconWeights effective_weights(const ReconWeights& w, const TrainConfig& c) {
  ReconWeights e = w;
  if (c.ablate_alpha) e.alpha = 0.0;
  if (c.ablate_beta) e.beta = 0.0;
  if (c.ablate_gamma) e.gamma = 0.0;
  return e;
}

ElboBreakdown elbo_loss(const VgaePlusModel& model, const Graph& graph,
                        const Tensor& sampled_z, const Posterior& posterior,
                        const TrainConfig& config) {
  const ReconWeights w = effective_weights(model.weights, config);
  const ReconstructionTerms terms =
      reconstruction_terms(model, graph, sampled_z, config.link_balance);

  Tensor kl = kl_standard_gaussian(posterior.mu, posterior.log_sigma);
  const double kl_weight = config.kl_weight >= 0.0
                               ? config.kl_weight
                               : 1.0 / static_cast<double>(graph.n_nodes);

  // Zero-weight terms are left out of the differentiable total entirely.
  Tensor weighted;
  bool has_recon = false;
  const auto accumulate = [&](double weight, const Tensor& term) {
    if (weight == 0.0) return;
    Tensor scaled = scale(term, weight);
    weighted = has_recon ? add(weighted, scaled) : scaled;
    has_recon = true;
  };
  accumulate(w.alpha, terms.link_ll);
  accumulate(w.beta, terms.feature_ll);
  accumulate(w.gamma, terms.label_ll);

  ElboBreakdown out;
  Tensor kl_term = scale(kl, kl_weight);
  out.total = has_recon ? add(scale(weighted, -1.0), kl_term) : kl_term;
  out.link_ll = terms.link_ll.scalar();
  out.feature_ll = terms.feature_ll.scalar();
  out.label_ll = terms.label_ll.scalar();
  out.kl = kl.scalar();
  out.kl_weight = kl_weight;
  return out;
}

}  // namespace sgq
