#pragma once

#include <optional>
#include <vector>

#include "sgq/rng.hpp"

namespace sgq {

struct GpConfig {
  // Pins the noise variance instead of fitting it (near-noiseless
  // interpolation for deterministic objectives).
  std::optional<double> fixed_noise;
  // Random multi-starts for the marginal-likelihood hyperparameter search.
  long fit_candidates = 64;
};

// Gaussian process with an RBF kernel (per-dimension length scales),
// constant mean, and hyperparameters fitted by maximizing the log marginal
// likelihood over a seeded multi-start search with local refinement.
class GaussianProcess {
 public:
  explicit GaussianProcess(GpConfig config = {}) : config_(config) {}

  void fit(std::vector<std::vector<double>> xs, std::vector<double> ys,
           Rng rng);

  struct Prediction {
    double mean = 0;
    double variance = 0;  // latent variance, excludes observation noise
  };
  Prediction predict(const std::vector<double>& x) const;

  const std::vector<double>& length_scales() const { return length_scales_; }
  double signal_variance() const { return signal_var_; }
  double noise_variance() const { return noise_var_; }

 private:
  double log_marginal(const std::vector<double>& ls, double sf2,
                      double sn2) const;
  bool factorize(const std::vector<double>& ls, double sf2, double sn2,
                 std::vector<double>* chol, std::vector<double>* alpha,
                 double* log_det) const;
  double kernel(const std::vector<double>& a, const std::vector<double>& b) const;

  GpConfig config_;
  std::vector<std::vector<double>> xs_;
  std::vector<double> ys_;
  double mean_ = 0;
  std::vector<double> length_scales_;
  double signal_var_ = 1;
  double noise_var_ = 1e-6;
  std::vector<double> chol_;   // lower-triangular factor of K
  std::vector<double> alpha_;  // K^-1 (y - mean)
};

// Expected improvement for minimization at a surrogate prediction given
// the best observed value; >= 0 everywhere, 0 wherever the surrogate is
// certain and not better than best.
double expected_improvement(double mean, double variance, double best);

}  // namespace sgq
