#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "../support/fixtures.hpp"
#include "sgq/errors.hpp"
#include "sgq/query.hpp"
#include "sgq/query_io.hpp"
#include "sgq/rng.hpp"

using namespace sgq;

TEST_CASE("worked six-node example reproduces the expected matrices") {
  const SubgraphQuery q = fixtures::worked_evidence_query();
  const EvidenceMatrices ev = build_evidence_matrices(q, 2);
  const auto adj = fixtures::worked_evidence_adjacency();
  const auto feat = fixtures::worked_evidence_features();
  for (long u = 0; u < 6; ++u) {
    for (long v = 0; v < 6; ++v) {
      CHECK(static_cast<int>(ev.adjacency[u * 6 + v]) == adj[u][v]);
    }
    for (long j = 0; j < 2; ++j) {
      CHECK(static_cast<int>(ev.features[u * 2 + j]) == feat[u][j]);
    }
  }
  // spot checks quoted in the module contract
  CHECK(ev.adjacency[0 * 6 + 0] == 1);
  CHECK(ev.adjacency[0 * 6 + 1] == 1);
  CHECK(ev.adjacency[0 * 6 + 3] == 0);
  CHECK(ev.features[2 * 2 + 0] == 0);
  CHECK(ev.features[2 * 2 + 1] == 0);
}

TEST_CASE("empty evidence yields identity adjacency and zero features") {
  SubgraphQuery q;
  q.n_nodes = 3;
  const EvidenceMatrices ev = build_evidence_matrices(q, 4);
  for (long u = 0; u < 3; ++u) {
    for (long v = 0; v < 3; ++v) {
      CHECK(ev.adjacency[u * 3 + v] == (u == v ? 1 : 0));
    }
  }
  for (const uint8_t b : ev.features) CHECK(b == 0);
}

TEST_CASE("a positive evidence link is mirrored symmetrically") {
  SubgraphQuery q;
  q.n_nodes = 4;
  q.evidence_links = {{1, 2, 1}};
  const EvidenceMatrices ev = build_evidence_matrices(q, 1);
  CHECK(ev.adjacency[1 * 4 + 2] == 1);
  CHECK(ev.adjacency[2 * 4 + 1] == 1);
}

TEST_CASE("evidence construction is idempotent and order-independent") {
  SubgraphQuery a = fixtures::worked_evidence_query();
  SubgraphQuery b = a;
  Rng rng(4);
  rng.shuffle(b.evidence_links);
  rng.shuffle(b.evidence_features);
  // re-listing an assignment with the same value is allowed
  b.evidence_links.push_back(b.evidence_links.front());
  const EvidenceMatrices ea = build_evidence_matrices(a, 2);
  const EvidenceMatrices eb = build_evidence_matrices(b, 2);
  CHECK(ea.adjacency == eb.adjacency);
  CHECK(ea.features == eb.features);
}

TEST_CASE("conflicting duplicate link specifications are rejected") {
  SubgraphQuery q;
  q.n_nodes = 3;
  q.evidence_links = {{0, 1, 1}, {1, 0, 0}};
  CHECK_THROWS_WITH_AS(build_evidence_matrices(q, 1),
                       doctest::Contains("conflicting"), ValidationError);
}

TEST_CASE("query invariants are enforced") {
  SubgraphQuery q;
  q.n_nodes = 3;
  q.evidence_links = {{0, 1, 1}};
  q.target_links = {{1, 0, 0}};
  CHECK_THROWS_WITH_AS(validate_query(q),
                       doctest::Contains("both evidence and target"),
                       ValidationError);

  SubgraphQuery range;
  range.n_nodes = 2;
  range.target_links = {{0, 5, 1}};
  CHECK_THROWS_AS(validate_query(range), ValidationError);

  SubgraphQuery dup_target;
  dup_target.n_nodes = 3;
  dup_target.target_links = {{0, 1, 1}, {1, 0, 1}};
  CHECK_THROWS_AS(validate_query(dup_target), ValidationError);

  SubgraphQuery self_pair;
  self_pair.n_nodes = 2;
  self_pair.evidence_links = {{1, 1, 1}};
  CHECK_THROWS_AS(validate_query(self_pair), ValidationError);

  SubgraphQuery bad_bits;
  bad_bits.n_nodes = 2;
  bad_bits.evidence_features = {{0, {1, 0}}};
  CHECK_THROWS_AS(build_evidence_matrices(bad_bits, 3), ValidationError);
}

TEST_CASE("appendix-style query fixtures pass validation") {
  validate_query(fixtures::neighborhood_query());
  validate_query(fixtures::single_neighbor_query());
  validate_query(fixtures::single_node_query());
  // neighborhood shape: 2 positive + 2 negative links, 4 labels
  const SubgraphQuery nq = fixtures::neighborhood_query();
  long pos = 0, neg = 0;
  for (const auto& l : nq.target_links) (l.value ? pos : neg)++;
  CHECK(pos == 2);
  CHECK(neg == 2);
  CHECK(nq.target_labels.size() == 4);
  // single node: no link targets, seven positive evidence links
  const SubgraphQuery sn = fixtures::single_node_query();
  CHECK(sn.target_links.empty());
  long pos_ev = 0;
  for (const auto& l : sn.evidence_links) pos_ev += l.value;
  CHECK(pos_ev == 7);
}

TEST_CASE("query files round-trip") {
  namespace fs = std::filesystem;
  const SubgraphQuery q = fixtures::neighborhood_query();
  const fs::path path = fs::temp_directory_path() / "sgq_query_roundtrip.json";
  save_query(q, path.string());
  const SubgraphQuery back = load_query(path.string());
  fs::remove(path);
  CHECK(back.n_nodes == q.n_nodes);
  CHECK(back.evidence_links.size() == q.evidence_links.size());
  CHECK(back.target_links.size() == q.target_links.size());
  CHECK(back.target_labels.size() == q.target_labels.size());
  for (size_t i = 0; i < q.target_links.size(); ++i) {
    CHECK(back.target_links[i].u == q.target_links[i].u);
    CHECK(back.target_links[i].v == q.target_links[i].v);
    CHECK(back.target_links[i].value == q.target_links[i].value);
  }
  const EvidenceMatrices ea = build_evidence_matrices(q, 2);
  const EvidenceMatrices eb = build_evidence_matrices(back, 2);
  CHECK(ea.adjacency == eb.adjacency);
  CHECK(ea.features == eb.features);
}

TEST_CASE("malformed query files raise parse errors") {
  CHECK_THROWS_AS(query_from_json_text("{not json", "test"), ParseError);
  CHECK_THROWS_AS(query_from_json_text("{\"target\": {}}", "test"), ParseError);
  // minimal valid query: nodes only
  CHECK(query_from_json_text("{\"n\": 2}", "test").n_nodes == 2);
}
