#pragma once

#include <optional>
#include <vector>

namespace sgq {

// ROC-AUC in the Mann-Whitney formulation with ties counted 1/2,
// accumulated in integers so it matches a pairwise-count oracle exactly.
// Returns nullopt on single-class input (the caller may skip the query).
std::optional<double> roc_auc(const std::vector<double>& scores,
                              const std::vector<int>& labels);

// Share (in percent) of ground-truth positives among the top
// ceil(0.2 * n) scores; ties broken by stable descending sort.
double hit_rate_at_20(const std::vector<double>& scores,
                      const std::vector<int>& labels);

// Unweighted mean over all n_classes of per-class F1 = 2tp/(2tp+fp+fn),
// with 0 for classes whose denominator is zero.
double f1_macro(const std::vector<int>& predicted,
                const std::vector<int>& truth, int n_classes);

}  // namespace sgq
