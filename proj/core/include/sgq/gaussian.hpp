#pragma once

#include <cstdint>

#include "sgq/rng.hpp"
#include "sgq/tensor.hpp"

namespace sgq {

// KL(N(mu, sigma^2) || N(0, 1)) summed over all entries, in closed form
// 0.5 * sum(mu^2 + sigma^2 - 2 log sigma - 1); differentiable. sigma is
// parameterized as log_sigma.
Tensor kl_standard_gaussian(const Tensor& mu, const Tensor& log_sigma);

// Reparameterized draw z = mu + exp(log_sigma) * eps, eps ~ N(0, I);
// differentiable through mu and log_sigma. A log_sigma of -inf encodes a
// degenerate (zero-variance) Gaussian and returns mu exactly.
Tensor sample_gaussian(const Tensor& mu, const Tensor& log_sigma, Rng& rng);
Tensor sample_gaussian(const Tensor& mu, const Tensor& log_sigma,
                       uint64_t rng_seed);

}  // namespace sgq
