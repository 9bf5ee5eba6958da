#pragma once

#include <vector>

#include "sgq/tensor.hpp"

namespace sgq {

struct AdamConfig {
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam with bias correction over a fixed parameter list. step() consumes
// the gradients accumulated by backward() and zeroes them afterwards.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::vector<Tensor> params, AdamConfig config = {});

  void step();
  long step_count() const { return step_; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<double>> first_moment_;
  std::vector<std::vector<double>> second_moment_;
  long step_ = 0;
  AdamConfig config_;
};

}  // namespace sgq
