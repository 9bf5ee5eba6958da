#include "sgq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgq/errors.hpp"

namespace sgq {

std::optional<double> roc_auc(const std::vector<double>& scores,
                              const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("roc_auc: scores and labels differ in length");
  }
  long n_pos = 0, n_neg = 0;
  for (const int y : labels) (y ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  // 2*wins + ties over all positive/negative pairs, exact in integers.
  long long twice_wins = 0;
  long neg_below = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    long pos_in_tie = 0, neg_in_tie = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? pos_in_tie : neg_in_tie)++;
      ++j;
    }
    twice_wins += static_cast<long long>(pos_in_tie) * (2 * neg_below + neg_in_tie);
    neg_below += neg_in_tie;
    i = j;
  }
  return static_cast<double>(twice_wins) /
         (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double hit_rate_at_20(const std::vector<double>& scores,
                      const std::vector<int>& labels) {
  if (scores.empty() || scores.size() != labels.size()) {
    throw ValidationError("hit_rate_at_20: need matching nonempty inputs");
  }
  const long n = static_cast<long>(scores.size());
  const long top = static_cast<long>(std::ceil(0.2 * static_cast<double>(n)));
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  long hits = 0;
  for (long i = 0; i < top; ++i) hits += labels[order[i]] ? 1 : 0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(top);
}

double f1_macro(const std::vector<int>& predicted,
                const std::vector<int>& truth, int n_classes) {
  if (predicted.empty() || predicted.size() != truth.size()) {
    throw ValidationError("f1_macro: need matching nonempty inputs");
  }
  std::vector<long> tp(n_classes, 0), fp(n_classes, 0), fn(n_classes, 0);
  for (size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] < 0 || predicted[i] >= n_classes || truth[i] < 0 ||
        truth[i] >= n_classes) {
      throw ValidationError("f1_macro: class index out of range");
    }
    if (predicted[i] == truth[i]) {
      ++tp[predicted[i]];
    } else {
      ++fp[predicted[i]];
      ++fn[truth[i]];
    }
  }
  double total = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    const long denom = 2 * tp[c] + fp[c] + fn[c];
    total += denom > 0 ? 2.0 * static_cast<double>(tp[c]) /
                             static_cast<double>(denom)
                       : 0.0;
  }
  return total / static_cast<double>(n_classes);
}

}  // namespace sgq
