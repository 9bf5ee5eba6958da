#include "sgq/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include <json.hpp>

#include "sgq/errors.hpp"
#include "sgq/metrics.hpp"
#include "sgq/rng.hpp"

namespace sgq {

namespace {

using nlohmann::json;

struct Components {
  std::vector<double> link_scores;
  std::vector<int> link_truth;
  std::vector<double> label_scores;  // one-vs-rest points, all classes
  std::vector<int> label_truth;
  std::vector<int> predicted_class;
  std::vector<int> true_class;
};

Components collect(const QueryAnswer& answer) {
  Components c;
  for (const auto& lp : answer.links) {
    c.link_scores.push_back(lp.p_link);
    c.link_truth.push_back(lp.value);
  }
  for (const auto& lp : answer.labels) {
    for (size_t cls = 0; cls < lp.distribution.size(); ++cls) {
      c.label_scores.push_back(lp.distribution[cls]);
      c.label_truth.push_back(static_cast<int>(cls) == lp.label ? 1 : 0);
    }
    const auto argmax = std::max_element(lp.distribution.begin(),
                                         lp.distribution.end());
    c.predicted_class.push_back(
        static_cast<int>(argmax - lp.distribution.begin()));
    c.true_class.push_back(lp.label);
  }
  return c;
}

void append(Components* into, const Components& from) {
  into->link_scores.insert(into->link_scores.end(), from.link_scores.begin(),
                           from.link_scores.end());
  into->link_truth.insert(into->link_truth.end(), from.link_truth.begin(),
                          from.link_truth.end());
  into->label_scores.insert(into->label_scores.end(), from.label_scores.begin(),
                            from.label_scores.end());
  into->label_truth.insert(into->label_truth.end(), from.label_truth.begin(),
                           from.label_truth.end());
  into->predicted_class.insert(into->predicted_class.end(),
                               from.predicted_class.begin(),
                               from.predicted_class.end());
  into->true_class.insert(into->true_class.end(), from.true_class.begin(),
                          from.true_class.end());
}

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

int max_class(const Components& c) {
  int m = -1;
  for (const int v : c.predicted_class) m = std::max(m, v);
  for (const int v : c.true_class) m = std::max(m, v);
  return m;
}

}  // namespace

std::string InferenceSpec::name() const {
  return kind == Kind::deterministic ? "det"
                                     : "mc(" + std::to_string(samples) + ")";
}

FamilyReport evaluate(const VgaePlusModel& model, const QuerySuite& suite,
                      const InferenceSpec& inference) {
  if (suite.queries.empty()) {
    throw ValidationError("evaluate: empty query suite");
  }

  FamilyReport report;
  report.family = suite.family;
  report.mode = suite.mode;
  report.inference = inference.name();
  report.n_queries = static_cast<long>(suite.queries.size());

  const bool pooled = suite.family == QueryFamily::single_neighbor ||
                      suite.family == QueryFamily::single_link ||
                      suite.family == QueryFamily::single_node;

  Components pool;
  std::vector<double> per_query_link_auc, per_query_label_auc;
  std::vector<double> per_query_hr, per_query_f1;
  double total_seconds = 0.0;

  for (size_t qi = 0; qi < suite.queries.size(); ++qi) {
    const SubgraphQuery& q = suite.queries[qi];
    const auto t0 = std::chrono::steady_clock::now();
    QueryAnswer answer;
    if (inference.kind == InferenceSpec::Kind::deterministic) {
      answer = infer_deterministic(model, q);
    } else {
      const uint64_t query_seed =
          inference.seed ^ (0x9e3779b97f4a7c15ULL * (qi + 1));
      answer = infer_mc(model, q, inference.samples, query_seed);
    }
    total_seconds += std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

    const Components c = collect(answer);
    if (pooled) {
      append(&pool, c);
      continue;
    }
    if (!c.link_scores.empty()) {
      const auto auc = roc_auc(c.link_scores, c.link_truth);
      if (auc) {
        per_query_link_auc.push_back(*auc);
        per_query_hr.push_back(hit_rate_at_20(c.link_scores, c.link_truth));
      } else {
        ++report.link_auc_skipped;
      }
    }
    if (!c.label_scores.empty()) {
      const auto auc = roc_auc(c.label_scores, c.label_truth);
      if (auc) {
        per_query_label_auc.push_back(*auc);
      } else {
        ++report.label_auc_skipped;
      }
      per_query_f1.push_back(
          f1_macro(c.predicted_class, c.true_class, max_class(c) + 1));
    }
  }

  if (pooled) {
    if (!pool.link_scores.empty()) {
      const auto auc = roc_auc(pool.link_scores, pool.link_truth);
      if (auc) {
        report.link_auc = *auc;
        report.hit_rate_at_20 = hit_rate_at_20(pool.link_scores, pool.link_truth);
      } else {
        ++report.link_auc_skipped;
      }
    }
    if (!pool.label_scores.empty()) {
      const auto auc = roc_auc(pool.label_scores, pool.label_truth);
      if (auc) {
        report.label_auc = *auc;
      } else {
        ++report.label_auc_skipped;
      }
      report.f1_macro =
          f1_macro(pool.predicted_class, pool.true_class, max_class(pool) + 1);
    }
  } else {
    report.link_auc = mean_of(per_query_link_auc);
    report.label_auc = mean_of(per_query_label_auc);
    report.hit_rate_at_20 = mean_of(per_query_hr);
    report.f1_macro = mean_of(per_query_f1);
  }
  if (report.link_auc && report.label_auc) {
    report.joint_auc = 0.5 * (*report.link_auc + *report.label_auc);
  }
  report.mean_query_seconds =
      total_seconds / static_cast<double>(suite.queries.size());
  return report;
}

namespace {

json report_json(const FamilyReport& r) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"family", family_name(r.family)},
          {"mode", mode_name(r.mode)},
          {"inference", r.inference},
          {"n_queries", r.n_queries},
          {"link_auc_skipped", r.link_auc_skipped},
          {"label_auc_skipped", r.label_auc_skipped},
          {"link_auc", opt(r.link_auc)},
          {"label_auc", opt(r.label_auc)},
          {"joint_auc", opt(r.joint_auc)},
          {"hit_rate_at_20", opt(r.hit_rate_at_20)},
          {"f1_macro", opt(r.f1_macro)},
          {"mean_query_seconds", r.mean_query_seconds}};
}

}  // namespace

void save_reports_json(const std::vector<FamilyReport>& reports,
                       const std::string& path) {
  json arr = json::array();
  for (const FamilyReport& r : reports) arr.push_back(report_json(r));
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << arr.dump(2) << "\n";
}

void save_reports_csv(const std::vector<FamilyReport>& reports,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << "family,mode,inference,metric,value\n";
  out.precision(17);
  for (const FamilyReport& r : reports) {
    const auto row = [&](const char* metric, const std::optional<double>& v) {
      if (!v) return;
      out << family_name(r.family) << ',' << mode_name(r.mode) << ','
          << r.inference << ',' << metric << ',' << *v << '\n';
    };
    row("link_auc", r.link_auc);
    row("label_auc", r.label_auc);
    row("joint_auc", r.joint_auc);
    row("hit_rate_at_20", r.hit_rate_at_20);
    row("f1_macro", r.f1_macro);
    row("mean_query_seconds", r.mean_query_seconds);
  }
}

}  // namespace sgq
