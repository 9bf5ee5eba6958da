#include "sgq/adam.hpp"

#include <cmath>

#include "sgq/errors.hpp"

namespace sgq {

AdamOptimizer::AdamOptimizer(std::vector<Tensor> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  for (const Tensor& p : params_) {
    if (!p.requires_grad()) {
      throw ValidationError("adam: parameter without gradient");
    }
    first_moment_.emplace_back(p.size(), 0.0);
    second_moment_.emplace_back(p.size(), 0.0);
  }
}

void AdamOptimizer::step() {
  ++step_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
  for (size_t i = 0; i < params_.size(); ++i) {
    const std::vector<double>& g = params_[i].grad();
    std::vector<double>& m = first_moment_[i];
    std::vector<double>& v = second_moment_[i];
    std::vector<double>& x = params_[i].mutable_value();
    for (size_t j = 0; j < g.size(); ++j) {
      m[j] = config_.beta1 * m[j] + (1.0 - config_.beta1) * g[j];
      v[j] = config_.beta2 * v[j] + (1.0 - config_.beta2) * g[j] * g[j];
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      x[j] -= config_.learning_rate * mhat / (std::sqrt(vhat) + config_.epsilon);
    }
    params_[i].zero_grad();
  }
}

}  // namespace sgq
