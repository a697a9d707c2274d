#include "gae2e/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "gae2e/errors.hpp"

namespace gae2e {

double roc_auc(const ScoredLabels& data) {
    const auto& scores = data.scores;
    const auto& labels = data.labels;
    if (scores.size() != labels.size()) {
        throw DegenerateLabelsError("scores and labels must have equal length");
    }
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (bool l : labels) n_pos += l ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw DegenerateLabelsError("AUC needs at least one positive and one negative");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of tie-averaged ranks (1-based) over the positives.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]]) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }

    const double u = rank_sum_pos -
                     0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double average_epoch_auc(const EpochHistory& h) {
    if (h.per_epoch_val_auc.empty()) {
        throw EmptyHistoryError("cannot average an empty epoch history");
    }
    double sum = std::accumulate(h.per_epoch_val_auc.begin(),
                                 h.per_epoch_val_auc.end(), 0.0);
    return sum / static_cast<double>(h.per_epoch_val_auc.size());
}

} // namespace gae2e
