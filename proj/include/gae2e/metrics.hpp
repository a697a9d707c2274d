#pragma once

#include <optional>
#include <vector>

namespace gae2e {

/// Classifier outputs paired with ground-truth labels (true = positive).
struct ScoredLabels {
    std::vector<double> scores;
    std::vector<bool> labels;
};

/// Per-epoch validation AUCs of one training run, plus the single test AUC
/// computed after training ends.
struct EpochHistory {
    std::vector<double> per_epoch_val_auc;
    std::optional<double> final_test_auc;
};

/// ROC AUC as the Mann-Whitney statistic: the fraction of positive-negative
/// pairs where the positive scores higher, ties counting 0.5. Computed in
/// O(n log n) by rank summation. Throws DegenerateLabelsError when only one
/// class is present.
double roc_auc(const ScoredLabels& data);

/// Arithmetic mean of the per-epoch validation AUCs.
/// Throws EmptyHistoryError on an empty history.
double average_epoch_auc(const EpochHistory& h);

} // namespace gae2e
