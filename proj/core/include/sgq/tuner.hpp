#pragma once

#include <array>
#include <functional>
#include <string>

#include "sgq/gp.hpp"
#include "sgq/loss.hpp"

namespace sgq {

using WeightPoint = std::array<double, 3>;  // (alpha, beta, gamma)

struct BoConfig {
  long budget = 15;  // total objective evaluations, >= 8
  uint64_t seed = 0;
  long candidates = 2048;  // quasi-random acquisition candidates
  GpConfig gp;
};

struct BoTraceRow {
  long iteration = 0;
  WeightPoint point{};
  double objective = 0;
  double best_so_far = 0;
};

struct BoResult {
  WeightPoint best_point{};
  double best_objective = 0;
  std::vector<BoTraceRow> trace;
};

// Minimizes a black-box objective over [0,1]^3: 8 scrambled
// low-discrepancy initial points, then a GP surrogate with expected
// improvement maximized over quasi-random candidates plus local
// refinement. Returns the argmin over all evaluated points; never
// evaluates the objective more than config.budget times. Deterministic
// given config.seed.
BoResult minimize_over_unit_cube(
    const std::function<double(const WeightPoint&)>& objective,
    const BoConfig& config);

// Unweighted summed reconstruction negative log-likelihood (link +
// feature + label terms) on the validation graph at the mean posterior
// embeddings, after training a model with the given weights on the
// training graph under inner_config.
double validation_objective(const ReconWeights& weights,
                            const Graph& train_graph, const Graph& val_graph,
                            const TrainConfig& inner_config);

// Bayesian optimization of (alpha, beta, gamma) against
// validation_objective.
BoResult tune_weights(const Graph& train_graph, const Graph& val_graph,
                      const TrainConfig& inner_config, const BoConfig& config);

void save_tuning_trace_csv(const std::vector<BoTraceRow>& trace,
                           const std::string& path);

}  // namespace sgq
