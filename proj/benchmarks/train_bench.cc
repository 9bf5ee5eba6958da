#include <benchmark/benchmark.h>

#include "sgq/adam.hpp"
#include "sgq/gaussian.hpp"
#include "sgq/synthetic.hpp"
#include "sgq/train.hpp"

using namespace sgq;

namespace {

struct TrainingStep {
  Graph graph;
  VgaePlusModel model;
  AdamOptimizer optimizer;
  Tensor adjacency;
  Tensor features;
  TrainConfig config;
  Rng noise{1};

  TrainingStep(long nodes, long embed)
      : graph(preprocess(planted_partition(
            [nodes] {
              PlantedPartitionConfig pp;
              pp.nodes = nodes;
              return pp;
            }(),
            7))),
        model({graph.feature_dim, graph.label_dim, embed, embed}, {1, 1, 1},
              Rng(3)),
        optimizer(model.parameters()),
        adjacency(graph.adjacency_tensor()),
        features(graph.feature_tensor()) {
    config.embed_dim = embed;
    config.hidden_dim = embed;
  }

  double step() {
    Posterior post = model.encode(adjacency, features);
    Tensor z = sample_gaussian(post.mu, post.log_sigma, noise);
    ElboBreakdown parts = elbo_loss(model, graph, z, post, config);
    parts.total.backward();
    optimizer.step();
    return parts.total.scalar();
  }
};

}  // namespace

static void BM_TrainEpoch(benchmark::State& state) {
  TrainingStep step(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(step.step());
  }
}
BENCHMARK(BM_TrainEpoch)
    ->Args({100, 32})
    ->Args({140, 128})
    ->Args({400, 128})
    ->Unit(benchmark::kMillisecond);

static void BM_Encode(benchmark::State& state) {
  TrainingStep step(state.range(0), 128);
  for (auto _ : state) {
    Posterior post = step.model.encode(step.adjacency, step.features);
    benchmark::DoNotOptimize(post.mu.value().data());
  }
}
BENCHMARK(BM_Encode)->Arg(140)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
