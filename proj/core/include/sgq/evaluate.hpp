#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgq/inference.hpp"
#include "sgq/suite.hpp"

namespace sgq {

struct InferenceSpec {
  enum class Kind { deterministic, monte_carlo };
  Kind kind = Kind::monte_carlo;
  long samples = 30;
  uint64_t seed = 0;

  std::string name() const;  // "det" or "mc(S)"
};

struct FamilyReport {
  QueryFamily family = QueryFamily::single_link;
  QueryMode mode = QueryMode::semi_inductive;
  std::string inference;
  long n_queries = 0;
  // Queries a per-query metric had to skip (degenerate single-class AUC).
  long link_auc_skipped = 0;
  long label_auc_skipped = 0;
  std::optional<double> link_auc;
  std::optional<double> label_auc;
  std::optional<double> joint_auc;  // (link_auc + label_auc) / 2
  std::optional<double> hit_rate_at_20;
  std::optional<double> f1_macro;
  double mean_query_seconds = 0;
};

// Scores a suite: single_* families pool components across queries and
// compute each metric once; neighborhood / joint families compute the
// metric per query and report the mean. Links are scored on raw
// P(link = 1) against the asserted value; labels one-vs-rest on the full
// class distribution pooled across classes.
FamilyReport evaluate(const VgaePlusModel& model, const QuerySuite& suite,
                      const InferenceSpec& inference);

void save_reports_json(const std::vector<FamilyReport>& reports,
                       const std::string& path);
void save_reports_csv(const std::vector<FamilyReport>& reports,
                      const std::string& path);

}  // namespace sgq
