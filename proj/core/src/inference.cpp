#include "sgq/inference.hpp"

#include <cmath>

#include "sgq/errors.hpp"
#include "sgq/gaussian.hpp"
#include "sgq/rng.hpp"

namespace sgq {

Posterior query_posterior(const VgaePlusModel& model,
                          const EvidenceMatrices& evidence) {
  if (evidence.feature_dim != model.dims.feature_dim) {
    throw ShapeError("query_posterior: evidence feature dim " +
                     std::to_string(evidence.feature_dim) + ", model expects " +
                     std::to_string(model.dims.feature_dim));
  }
  return model.encode(evidence.adjacency_tensor(), evidence.feature_tensor());
}

QueryAnswer target_probability(const Tensor& z, const SubgraphQuery& q,
                               const VgaePlusModel& model) {
  if (z.rows() != q.n_nodes) {
    throw ShapeError("target_probability: " + std::to_string(z.rows()) +
                     " embeddings for " + std::to_string(q.n_nodes) + " nodes");
  }
  QueryAnswer answer;

  Tensor link_probs, label_probs, feature_probs;
  if (!q.target_links.empty()) link_probs = model.decode_links(z);
  if (!q.target_labels.empty()) label_probs = model.classify_nodes(z);
  if (!q.target_features.empty()) feature_probs = model.decode_features(z);

  double log_joint = 0.0;
  for (const LinkAssignment& link : q.target_links) {
    LinkProbability lp;
    lp.u = link.u;
    lp.v = link.v;
    lp.value = link.value;
    lp.p_link = link_probs.at(link.u, link.v);
    lp.p_value = link.value ? lp.p_link : 1.0 - lp.p_link;
    log_joint += std::log(lp.p_value);
    answer.links.push_back(lp);
  }
  for (const LabelAssignment& label : q.target_labels) {
    if (label.label < 0 || label.label >= model.dims.label_dim) {
      throw ValidationError("target label class " + std::to_string(label.label) +
                            " out of range for " +
                            std::to_string(model.dims.label_dim) + " classes");
    }
    LabelProbability lp;
    lp.node = label.node;
    lp.label = label.label;
    lp.distribution.resize(model.dims.label_dim);
    for (long c = 0; c < model.dims.label_dim; ++c) {
      lp.distribution[c] = label_probs.at(label.node, c);
    }
    lp.p_label = lp.distribution[label.label];
    log_joint += std::log(lp.p_label);
    answer.labels.push_back(lp);
  }
  for (const FeatureAssignment& feat : q.target_features) {
    if (static_cast<long>(feat.bits.size()) != model.dims.feature_dim) {
      throw ValidationError("target feature vector for node " +
                            std::to_string(feat.node) + " has " +
                            std::to_string(feat.bits.size()) +
                            " bits, expected " +
                            std::to_string(model.dims.feature_dim));
    }
    FeatureProbability fp;
    fp.node = feat.node;
    fp.per_dim.resize(model.dims.feature_dim);
    fp.p_vector = 1.0;
    for (long j = 0; j < model.dims.feature_dim; ++j) {
      fp.per_dim[j] = feature_probs.at(feat.node, j);
      fp.p_vector *= feat.bits[j] ? fp.per_dim[j] : 1.0 - fp.per_dim[j];
    }
    log_joint += std::log(fp.p_vector);
    answer.features.push_back(fp);
  }

  answer.empty_target = answer.links.empty() && answer.labels.empty() &&
                        answer.features.empty();
  answer.joint_log_prob = answer.empty_target ? 0.0 : log_joint;
  answer.joint_prob = std::exp(answer.joint_log_prob);
  return answer;
}

QueryAnswer infer_deterministic_from_posterior(const VgaePlusModel& model,
                                               const SubgraphQuery& q,
                                               const Posterior& posterior) {
  QueryAnswer answer = target_probability(posterior.mu, q, model);
  answer.mode = "deterministic";
  return answer;
}

QueryAnswer infer_deterministic(const VgaePlusModel& model,
                                const SubgraphQuery& q) {
  const EvidenceMatrices ev = build_evidence_matrices(q, model.dims.feature_dim);
  return infer_deterministic_from_posterior(model, q, query_posterior(model, ev));
}

QueryAnswer infer_mc_from_posterior(const VgaePlusModel& model,
                                    const SubgraphQuery& q,
                                    const Posterior& posterior, long samples,
                                    uint64_t seed) {
  if (samples < 1) {
    throw ValidationError("infer_mc: sample count must be >= 1");
  }
  Rng root = Rng(seed).split("mc-inference");

  QueryAnswer mean;
  double joint_sum = 0.0;
  std::vector<double> link_sum, label_p_sum, feature_p_sum;
  std::vector<std::vector<double>> dist_sum, per_dim_sum;

  for (long s = 0; s < samples; ++s) {
    Rng sample_rng = root.split(static_cast<uint64_t>(s));
    Tensor z = sample_gaussian(posterior.mu, posterior.log_sigma, sample_rng);
    QueryAnswer one = target_probability(z, q, model);
    if (s == 0) {
      mean = one;
      link_sum.assign(one.links.size(), 0.0);
      label_p_sum.assign(one.labels.size(), 0.0);
      feature_p_sum.assign(one.features.size(), 0.0);
      for (const auto& lp : one.labels) {
        dist_sum.emplace_back(lp.distribution.size(), 0.0);
      }
      for (const auto& fp : one.features) {
        per_dim_sum.emplace_back(fp.per_dim.size(), 0.0);
      }
    }
    joint_sum += one.joint_prob;
    for (size_t i = 0; i < one.links.size(); ++i) link_sum[i] += one.links[i].p_link;
    for (size_t i = 0; i < one.labels.size(); ++i) {
      label_p_sum[i] += one.labels[i].p_label;
      for (size_t c = 0; c < one.labels[i].distribution.size(); ++c) {
        dist_sum[i][c] += one.labels[i].distribution[c];
      }
    }
    for (size_t i = 0; i < one.features.size(); ++i) {
      feature_p_sum[i] += one.features[i].p_vector;
      for (size_t j = 0; j < one.features[i].per_dim.size(); ++j) {
        per_dim_sum[i][j] += one.features[i].per_dim[j];
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(samples);
  for (size_t i = 0; i < mean.links.size(); ++i) {
    mean.links[i].p_link = link_sum[i] * inv;
    mean.links[i].p_value = mean.links[i].value ? mean.links[i].p_link
                                                : 1.0 - mean.links[i].p_link;
  }
  for (size_t i = 0; i < mean.labels.size(); ++i) {
    mean.labels[i].p_label = label_p_sum[i] * inv;
    for (size_t c = 0; c < mean.labels[i].distribution.size(); ++c) {
      mean.labels[i].distribution[c] = dist_sum[i][c] * inv;
    }
  }
  for (size_t i = 0; i < mean.features.size(); ++i) {
    mean.features[i].p_vector = feature_p_sum[i] * inv;
    for (size_t j = 0; j < mean.features[i].per_dim.size(); ++j) {
      mean.features[i].per_dim[j] = per_dim_sum[i][j] * inv;
    }
  }
  mean.joint_prob = joint_sum * inv;
  mean.joint_log_prob = std::log(mean.joint_prob);
  mean.mode = "mc";
  mean.samples = samples;
  return mean;
}

QueryAnswer infer_mc(const VgaePlusModel& model, const SubgraphQuery& q,
                     long samples, uint64_t seed) {
  const EvidenceMatrices ev = build_evidence_matrices(q, model.dims.feature_dim);
  return infer_mc_from_posterior(model, q, query_posterior(model, ev), samples,
                                 seed);
}

}  // namespace sgq
