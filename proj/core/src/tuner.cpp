#include "sgq/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sgq/errors.hpp"
#include "sgq/train.hpp"

namespace sgq {

namespace {

double halton(long index, long base) {
  double f = 1.0, r = 0.0;
  long i = index;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Halton sequence (bases 2, 3, 5) under a seeded Cranley-Patterson
// rotation; deterministic scrambled low-discrepancy points in [0,1)^3.
WeightPoint scrambled_point(long index, const WeightPoint& shift) {
  static constexpr long kBases[3] = {2, 3, 5};
  WeightPoint p;
  for (int t = 0; t < 3; ++t) {
    const double v = halton(index + 1, kBases[t]) + shift[t];
    p[t] = v - std::floor(v);
  }
  return p;
}

}  // namespace

BoResult minimize_over_unit_cube(
    const std::function<double(const WeightPoint&)>& objective,
    const BoConfig& config) {
  constexpr long kInitialDesign = 8;
  if (config.budget < kInitialDesign) {
    throw ValidationError("tune: budget must be >= 8");
  }

  Rng root = Rng(config.seed).split("bayesopt");
  WeightPoint shift{root.uniform(), root.uniform(), root.uniform()};

  BoResult result;
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  double best = std::numeric_limits<double>::infinity();

  const auto record = [&](const WeightPoint& p) {
    const double y = objective(p);
    if (!std::isfinite(y)) {
      throw NumericError("tune: non-finite objective value");
    }
    xs.push_back({p[0], p[1], p[2]});
    ys.push_back(y);
    if (y < best) {
      best = y;
      result.best_point = p;
      result.best_objective = y;
    }
    result.trace.push_back(
        {static_cast<long>(ys.size()) - 1, p, y, best});
  };

  for (long i = 0; i < kInitialDesign; ++i) record(scrambled_point(i, shift));

  for (long iter = kInitialDesign; iter < config.budget; ++iter) {
    GaussianProcess gp(config.gp);
    gp.fit(xs, ys, root.split("gp-fit").split(static_cast<uint64_t>(iter)));

    const auto ei_at = [&](const WeightPoint& p) {
      const auto pred = gp.predict({p[0], p[1], p[2]});
      return expected_improvement(pred.mean, pred.variance, best);
    };

    WeightPoint chosen = scrambled_point(iter * config.candidates, shift);
    double chosen_ei = ei_at(chosen);
    for (long c = 0; c < config.candidates; ++c) {
      const WeightPoint p = scrambled_point(iter * config.candidates + c, shift);
      const double ei = ei_at(p);
      if (ei > chosen_ei) {
        chosen_ei = ei;
        chosen = p;
      }
    }
    // Pattern-search refinement on the winning candidate.
    for (double step = 0.08; step > 1e-3; step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (int t = 0; t < 3; ++t) {
          for (const double dir : {-1.0, 1.0}) {
            WeightPoint p = chosen;
            p[t] = std::clamp(p[t] + dir * step, 0.0, 1.0);
            const double ei = ei_at(p);
            if (ei > chosen_ei) {
              chosen_ei = ei;
              chosen = p;
              improved = true;
            }
          }
        }
      }
    }
    record(chosen);
  }
  return result;
}

double validation_objective(const ReconWeights& weights,
                            const Graph& train_graph, const Graph& val_graph,
                            const TrainConfig& inner_config) {
  TrainResult trained = train(train_graph, inner_config, weights);
  const Posterior post = trained.model.encode(val_graph.adjacency_tensor(),
                                              val_graph.feature_tensor());
  // Plain likelihood: the tuning target carries no class reweighting and
  // no alpha/beta/gamma.
  const ReconstructionTerms terms = reconstruction_terms(
      trained.model, val_graph, post.mu, LinkBalance::plain);
  return -(terms.link_ll.scalar() + terms.feature_ll.scalar() +
           terms.label_ll.scalar());
}

BoResult tune_weights(const Graph& train_graph, const Graph& val_graph,
                      const TrainConfig& inner_config, const BoConfig& config) {
  return minimize_over_unit_cube(
      [&](const WeightPoint& p) {
        return validation_objective({p[0], p[1], p[2]}, train_graph, val_graph,
                                    inner_config);
      },
      config);
}

void save_tuning_trace_csv(const std::vector<BoTraceRow>& trace,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << "iteration,alpha,beta,gamma,objective,best_so_far\n";
  out.precision(17);
  for (const BoTraceRow& row : trace) {
    out << row.iteration << ',' << row.point[0] << ',' << row.point[1] << ','
        << row.point[2] << ',' << row.objective << ',' << row.best_so_far
        << '\n';
  }
}

}  // namespace sgq
