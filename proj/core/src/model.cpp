#include "sgq/model.hpp"

#include <cmath>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

Tensor glorot(long rows, long cols, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::vector<double> data(rows * cols);
  for (double& v : data) v = (2.0 * rng.uniform() - 1.0) * bound;
  return Tensor::from_data(rows, cols, std::move(data), /*requires_grad=*/true);
}

// linear -> relu -> linear
Tensor mlp2(const Tensor& x, const Tensor& w1, const Tensor& b1,
            const Tensor& w2, const Tensor& b2) {
  return add_rowvec(matmul(relu(add_rowvec(matmul(x, w1), b1)), w2), b2);
}

void check_weights(const ReconWeights& w) {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(w.alpha) || !in_unit(w.beta) || !in_unit(w.gamma)) {
    throw ValidationError("model: reconstruction weights must lie in [0,1]");
  }
}

}  // namespace

VgaePlusModel::VgaePlusModel(ModelDims d, ReconWeights w) : dims(d), weights(w) {
  check_weights(w);
  const long k = d.feature_dim, l = d.label_dim, e = d.embed_dim, h = d.hidden_dim;
  gin1_w1 = Tensor::zeros(k, h, true);
  gin1_b1 = Tensor::zeros(1, h, true);
  gin1_w2 = Tensor::zeros(h, e, true);
  gin1_b2 = Tensor::zeros(1, e, true);
  gin2_w1 = Tensor::zeros(e, h, true);
  gin2_b1 = Tensor::zeros(1, h, true);
  mu_head_w = Tensor::zeros(h, e, true);
  mu_head_b = Tensor::zeros(1, e, true);
  logsig_head_w = Tensor::zeros(h, e, true);
  logsig_head_b = Tensor::zeros(1, e, true);
  lambda = Tensor::zeros(e, e, true);
  feat_w1 = Tensor::zeros(e, h, true);
  feat_b1 = Tensor::zeros(1, h, true);
  feat_w2 = Tensor::zeros(h, k, true);
  feat_b2 = Tensor::zeros(1, k, true);
  label_w1 = Tensor::zeros(e, h, true);
  label_b1 = Tensor::zeros(1, h, true);
  label_w2 = Tensor::zeros(h, std::max(l, 1L), true);
  label_b2 = Tensor::zeros(1, std::max(l, 1L), true);
}

VgaePlusModel::VgaePlusModel(ModelDims d, ReconWeights w, Rng init_rng)
    : VgaePlusModel(d, w) {
  const long k = d.feature_dim, l = std::max(d.label_dim, 1L);
  const long e = d.embed_dim, h = d.hidden_dim;
  Rng rng = init_rng.split("model-init");
  // Sum aggregation scales activations with node degree; damping the
  // encoder output layers keeps the initial posterior near the prior so
  // the first KL and exp(log_sigma) evaluations stay finite on dense
  // graphs.
  const auto damped = [&rng](long rows, long cols) {
    Tensor t = glorot(rows, cols, rng);
    for (double& v : t.mutable_value()) v *= 0.1;
    return t;
  };
  gin1_w1 = glorot(k, h, rng);
  gin1_w2 = damped(h, e);
  gin2_w1 = glorot(e, h, rng);
  mu_head_w = damped(h, e);
  logsig_head_w = damped(h, e);
  // Start near-deterministic: a wide posterior at initialization drowns
  // the mean signal in sampling noise and the decoders settle at base
  // rates before any structure is learned.
  logsig_head_b = Tensor::from_data(1, e, std::vector<double>(e, -3.0), true);
  lambda = glorot(e, e, rng);
  feat_w1 = glorot(e, h, rng);
  feat_w2 = glorot(h, k, rng);
  label_w1 = glorot(e, h, rng);
  label_w2 = glorot(h, l, rng);
}

VgaePlusModel VgaePlusModel::zeros(ModelDims dims, ReconWeights weights) {
  return VgaePlusModel(dims, weights);
}

namespace {

// Closed-neighborhood mean: rows of the self-looped adjacency normalized
// to sum to one. Aggregated activations then have the same scale on the
// training graph (degrees in the tens) and on small evidence graphs
// (degrees near one), which is what lets one encoder serve both.
Tensor mean_aggregation_matrix(const Tensor& adjacency) {
  const long n = adjacency.rows();
  std::vector<double> normalized = adjacency.value();
  for (long u = 0; u < n; ++u) {
    double degree = 0.0;
    for (long v = 0; v < n; ++v) degree += normalized[u * n + v];
    if (degree <= 0.0) degree = 1.0;
    for (long v = 0; v < n; ++v) normalized[u * n + v] /= degree;
  }
  return Tensor::from_data(n, n, std::move(normalized));
}

}  // namespace

Posterior VgaePlusModel::encode(const Tensor& adjacency,
                                const Tensor& features) const {
  if (adjacency.rows() != adjacency.cols() ||
      adjacency.rows() != features.rows()) {
    throw ShapeError("encode: adjacency " + std::to_string(adjacency.rows()) +
                     "x" + std::to_string(adjacency.cols()) + " vs features " +
                     std::to_string(features.rows()) + "x" +
                     std::to_string(features.cols()));
  }
  if (features.cols() != dims.feature_dim) {
    throw ShapeError("encode: feature dim " + std::to_string(features.cols()) +
                     ", model expects " + std::to_string(dims.feature_dim));
  }
  if (adjacency.requires_grad()) {
    throw ValidationError("encode: adjacency is a constant encoder input");
  }
  const Tensor agg = mean_aggregation_matrix(adjacency);
  Tensor h1 = mlp2(matmul(agg, features), gin1_w1, gin1_b1, gin1_w2, gin1_b2);
  Tensor h2 = relu(add_rowvec(matmul(matmul(agg, h1), gin2_w1), gin2_b1));
  Posterior post;
  post.mu = add_rowvec(matmul(h2, mu_head_w), mu_head_b);
  post.log_sigma = add_rowvec(matmul(h2, logsig_head_w), logsig_head_b);
  return post;
}

Tensor link_logits(const Tensor& z, const Tensor& lambda) {
  Tensor lambda_sym = scale(add(lambda, transpose(lambda)), 0.5);
  Tensor scores = matmul(matmul(z, lambda_sym), transpose(z));
  // The bilinear form is symmetric only up to summation order; average
  // with the transpose so P[u,v] == P[v,u] holds bitwise.
  return scale(add(scores, transpose(scores)), 0.5);
}

Tensor decode_link_probs(const Tensor& z, const Tensor& lambda) {
  return sigmoid(link_logits(z, lambda));
}

Tensor VgaePlusModel::link_logits(const Tensor& z) const {
  return sgq::link_logits(z, lambda);
}

Tensor VgaePlusModel::decode_links(const Tensor& z) const {
  return decode_link_probs(z, lambda);
}

Tensor VgaePlusModel::feature_logits(const Tensor& z) const {
  return mlp2(z, feat_w1, feat_b1, feat_w2, feat_b2);
}

Tensor VgaePlusModel::decode_features(const Tensor& z) const {
  return sigmoid(feature_logits(z));
}

Tensor VgaePlusModel::label_logits(const Tensor& z) const {
  if (dims.label_dim < 1) {
    throw ValidationError("classify_nodes: model has no label classes");
  }
  return mlp2(z, label_w1, label_b1, label_w2, label_b2);
}

Tensor VgaePlusModel::classify_nodes(const Tensor& z) const {
  return softmax_rows(label_logits(z));
}

std::vector<std::pair<std::string, Tensor>> VgaePlusModel::named_parameters()
    const {
  return {
      {"gin1.w1", gin1_w1},       {"gin1.b1", gin1_b1},
      {"gin1.w2", gin1_w2},       {"gin1.b2", gin1_b2},
      {"gin2.w1", gin2_w1},       {"gin2.b1", gin2_b1},
      {"mu_head.w", mu_head_w},   {"mu_head.b", mu_head_b},
      {"logsig_head.w", logsig_head_w},
      {"logsig_head.b", logsig_head_b},
      {"lambda", lambda},
      {"feat.w1", feat_w1},       {"feat.b1", feat_b1},
      {"feat.w2", feat_w2},       {"feat.b2", feat_b2},
      {"label.w1", label_w1},     {"label.b1", label_b1},
      {"label.w2", label_w2},     {"label.b2", label_b2},
  };
}

std::vector<Tensor> VgaePlusModel::parameters() const {
  std::vector<Tensor> out;
  for (auto& [name, t] : named_parameters()) out.push_back(t);
  return out;
}

}  // namespace sgq
