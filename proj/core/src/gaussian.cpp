#include "sgq/gaussian.hpp"

#include "sgq/errors.hpp"

namespace sgq {

Tensor kl_standard_gaussian(const Tensor& mu, const Tensor& log_sigma) {
  if (mu.rows() != log_sigma.rows() || mu.cols() != log_sigma.cols()) {
    throw ShapeError("kl_standard_gaussian: shape mismatch " +
                     std::to_string(mu.rows()) + "x" + std::to_string(mu.cols()) +
                     " vs " + std::to_string(log_sigma.rows()) + "x" +
                     std::to_string(log_sigma.cols()));
  }
  Tensor mu_sq = elementwise_mul(mu, mu);
  Tensor var = exp(scale(log_sigma, 2.0));
  Tensor inner = add(add(mu_sq, var), add_scalar(scale(log_sigma, -2.0), -1.0));
  return scale(sum(inner), 0.5);
}

Tensor sample_gaussian(const Tensor& mu, const Tensor& log_sigma, Rng& rng) {
  if (mu.rows() != log_sigma.rows() || mu.cols() != log_sigma.cols()) {
    throw ShapeError("sample_gaussian: shape mismatch " +
                     std::to_string(mu.rows()) + "x" + std::to_string(mu.cols()) +
                     " vs " + std::to_string(log_sigma.rows()) + "x" +
                     std::to_string(log_sigma.cols()));
  }
  std::vector<double> eps(mu.size());
  for (double& e : eps) e = rng.normal();
  Tensor noise = Tensor::from_data(mu.rows(), mu.cols(), std::move(eps));
  return add(mu, elementwise_mul(exp(log_sigma), noise));
}

Tensor sample_gaussian(const Tensor& mu, const Tensor& log_sigma,
                       uint64_t rng_seed) {
  Rng rng = Rng(rng_seed).split("gaussian");
  return sample_gaussian(mu, log_sigma, rng);
}

}  // namespace sgq
