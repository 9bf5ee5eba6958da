#include "sgq/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "sgq/errors.hpp"
#include "sgq/rng.hpp"

namespace sgq {

double gradient_check(const std::function<Tensor()>& loss_fn,
                      const std::vector<Tensor>& params,
                      const GradCheckOptions& options) {
  for (const Tensor& p : params) {
    if (!p.requires_grad()) {
      throw ValidationError("gradient_check: parameter without gradient");
    }
  }

  std::vector<Tensor> mut = params;
  for (Tensor& p : mut) p.zero_grad();
  Tensor loss = loss_fn();
  if (!std::isfinite(loss.scalar())) {
    throw NumericError("gradient_check: non-finite loss");
  }
  loss.backward();
  std::vector<std::vector<double>> analytic;
  analytic.reserve(mut.size());
  for (const Tensor& p : mut) analytic.push_back(p.grad());

  Rng coord_rng = Rng(options.sample_seed).split("gradcheck");
  double worst = 0.0;
  for (size_t pi = 0; pi < mut.size(); ++pi) {
    std::vector<long> coords(mut[pi].size());
    for (long i = 0; i < mut[pi].size(); ++i) coords[i] = i;
    if (static_cast<long>(coords.size()) > options.max_coords_per_param) {
      coord_rng.shuffle(coords);
      coords.resize(options.max_coords_per_param);
    }
    std::vector<double>& x = mut[pi].mutable_value();
    for (const long c : coords) {
      const double saved = x[c];
      x[c] = saved + options.epsilon;
      const double fplus = loss_fn().scalar();
      x[c] = saved - options.epsilon;
      const double fminus = loss_fn().scalar();
      x[c] = saved;
      if (!std::isfinite(fplus) || !std::isfinite(fminus)) {
        throw NumericError("gradient_check: non-finite loss at perturbation");
      }
      const double numeric = (fplus - fminus) / (2.0 * options.epsilon);
      const double rel = std::abs(analytic[pi][c] - numeric) /
                         std::max(1.0, std::abs(numeric));
      worst = std::max(worst, rel);
    }
  }
  for (Tensor& p : mut) p.zero_grad();
  return worst;
}

}  // namespace sgq
