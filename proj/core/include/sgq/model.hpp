#pragma once

#include <vector>

#include "sgq/rng.hpp"
#include "sgq/tensor.hpp"

namespace sgq {

struct ModelDims {
  long feature_dim = 0;
  long label_dim = 0;
  long embed_dim = 128;
  long hidden_dim = 128;
};

// Reconstruction weights for links / features / labels, each in [0, 1].
struct ReconWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

// Per-node Gaussian embedding parameters produced by the encoder.
struct Posterior {
  Tensor mu;         // n x d
  Tensor log_sigma;  // n x d
};

// Augmented VGAE: a 2-layer GIN encoder with mu / log-sigma heads, a
// bilinear block-matrix link decoder, and MLP feature and label decoders
// that all read the same node embeddings.
class VgaePlusModel {
 public:
  // Glorot-style random initialization, deterministic under init_rng.
  VgaePlusModel(ModelDims dims, ReconWeights weights, Rng init_rng);
  // All-zero parameters (degenerate model, used by tests).
  static VgaePlusModel zeros(ModelDims dims, ReconWeights weights = {});

  // Two rounds of message passing H' = MLP(mean over the closed
  // neighborhood of H); the adjacency must carry self-loops so a node's
  // own state enters the mean. Node labels are never an encoder input.
  Posterior encode(const Tensor& adjacency, const Tensor& features) const;

  // logistic(z Lambda_sym z^T) with Lambda_sym = (Lambda + Lambda^T) / 2;
  // symmetric, entries in (0, 1).
  Tensor decode_links(const Tensor& z) const;
  Tensor link_logits(const Tensor& z) const;

  // Per-entry Bernoulli probabilities, n x k.
  Tensor decode_features(const Tensor& z) const;
  Tensor feature_logits(const Tensor& z) const;

  // Row-stochastic class distributions, n x l.
  Tensor classify_nodes(const Tensor& z) const;
  Tensor label_logits(const Tensor& z) const;

  std::vector<Tensor> parameters() const;
  // (name, tensor) pairs in checkpoint order.
  std::vector<std::pair<std::string, Tensor>> named_parameters() const;

  ModelDims dims;
  ReconWeights weights;

  // 2-layer GIN encoder; each layer's MLP is linear-relu-linear.
  Tensor gin1_w1, gin1_b1, gin1_w2, gin1_b2;  // k -> h -> d
  Tensor gin2_w1, gin2_b1;                    // d -> h
  Tensor mu_head_w, mu_head_b;                // h -> d
  Tensor logsig_head_w, logsig_head_b;        // h -> d
  Tensor lambda;                              // d x d block matrix
  Tensor feat_w1, feat_b1, feat_w2, feat_b2;  // d -> h -> k
  Tensor label_w1, label_b1, label_w2, label_b2;  // d -> h -> l

 private:
  VgaePlusModel(ModelDims dims, ReconWeights weights);
};

// Bilinear link decoder on explicit inputs (the model method delegates here).
Tensor decode_link_probs(const Tensor& z, const Tensor& lambda);
Tensor link_logits(const Tensor& z, const Tensor& lambda);

}  // namespace sgq
