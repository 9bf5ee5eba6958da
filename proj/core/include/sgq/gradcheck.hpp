#pragma once

#include <functional>
#include <vector>

#include "sgq/tensor.hpp"

namespace sgq {

struct GradCheckOptions {
  double epsilon = 1e-5;
  // Coordinates checked per parameter tensor; all when the tensor is smaller.
  long max_coords_per_param = 40;
  uint64_t sample_seed = 0;
};

// Compares the analytic gradient of loss_fn against central finite
// differences and returns the max over sampled coordinates of
// |analytic - numeric| / max(1, |numeric|). loss_fn must be deterministic
// and rebuild the loss from the current parameter values each call.
double gradient_check(const std::function<Tensor()>& loss_fn,
                      const std::vector<Tensor>& params,
                      const GradCheckOptions& options = {});

}  // namespace sgq
