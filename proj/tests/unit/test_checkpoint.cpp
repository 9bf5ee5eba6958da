#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "../support/fixtures.hpp"
#include "sgq/checkpoint.hpp"
#include "sgq/errors.hpp"
#include "sgq/inference.hpp"

using namespace sgq;

TEST_CASE("checkpoints round-trip bit-exact") {
  namespace fs = std::filesystem;
  VgaePlusModel model = fixtures::random_model(3, 2, 8, 8, 1);
  model.weights = {0.31, 0.77, 0.123456789012345};
  const fs::path path = fs::temp_directory_path() / "sgq_ckpt_test.json";
  save_model(model, path.string());
  const VgaePlusModel loaded = load_model(path.string());

  CHECK(loaded.dims.feature_dim == 3);
  CHECK(loaded.dims.label_dim == 2);
  CHECK(loaded.dims.embed_dim == 8);
  CHECK(loaded.weights.alpha == model.weights.alpha);
  CHECK(loaded.weights.gamma == model.weights.gamma);
  const auto a = model.named_parameters();
  const auto b = loaded.named_parameters();
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second.value() == b[i].second.value());  // bitwise
  }

  // identical inference outputs
  const SubgraphQuery q = [] {
    SubgraphQuery query;
    query.n_nodes = 4;
    query.evidence_links = {{0, 1, 1}, {2, 3, 0}};
    query.evidence_features = {{0, {1, 0, 1}}, {1, {0, 0, 1}}};
    query.target_links = {{0, 2, 1}, {1, 3, 0}};
    query.target_labels = {{2, 1}};
    return query;
  }();
  const QueryAnswer original = infer_deterministic(model, q);
  const QueryAnswer back = infer_deterministic(loaded, q);
  CHECK(original.joint_log_prob == back.joint_log_prob);
  fs::remove(path);
}

TEST_CASE("corrupt checkpoints raise parse errors") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "sgq_ckpt_bad.json";
  {
    std::ofstream out(path);
    out << "{\"format_version\": 1}";
  }
  CHECK_THROWS_AS(load_model(path.string()), ParseError);
  fs::remove(path);
  CHECK_THROWS_AS(load_model((path.string() + ".missing")), ParseError);
}
