#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gae2e/metrics.hpp"
#include "gae2e/param_space.hpp"

namespace gae2e {

/// Configuration of the desk-scale surrogate training job. It stands in for
/// the full transfer-learning pipeline while preserving the causal role of
/// every tuned hyperparameter: class weighting, the two-stage decay and
/// learning-rate structure, epoch-averaged validation AUC, early stopping.
struct SurrogateConfig {
    int n_train = 30;
    int n_val = 12;
    int n_test = 100;
    int stage1_epochs = 5;  // output layer only
    int stage2_epochs = 5;  // all layers
    int patience = 10;      // early stop after this many non-improving epochs
    std::uint64_t data_seed = 2024;
    double class_imbalance = 0.5; // positive-class fraction
    int hidden_units = 8;

    void validate() const;
};

/// The six tuned hyperparameters.
struct HyperParams {
    double pos_cls_weight = 1.0;
    double neg_cls_weight = 1.0;
    double weight_decay = 0.0;   // L2 coefficient, stage 1
    double weight_decay2 = 0.0;  // L2 coefficient, stage 2
    double init_learningrate = 0.01;
    double all_layer_multiplier = 0.1; // stage-2 learning-rate multiplier

    /// Maps a vector onto the six fields. Uses parameter names when the
    /// space carries the canonical six, otherwise positional order for any
    /// six-dimensional space.
    static HyperParams from_vector(const ParamVector& v, const ParamSpace& space);

    void validate() const; // finite and non-negative
};

/// Labeled 2-D points.
struct LabeledPoints {
    std::vector<std::array<double, 2>> x;
    std::vector<bool> y; // true = positive class

    std::size_t size() const { return x.size(); }
};

struct SurrogateData {
    LabeledPoints train;
    LabeledPoints val;
    LabeledPoints test;
};

/// Two overlapping Gaussian clusters, split deterministically from
/// cfg.data_seed. Each split holds at least one point of each class.
SurrogateData generate_surrogate_data(const SurrogateConfig& cfg);

/// One hidden tanh layer plus a 2-class softmax head.
struct SurrogateModel {
    int hidden = 8;
    std::vector<double> w1; // hidden x 2, row-major
    std::vector<double> b1; // hidden
    std::vector<double> w2; // 2 x hidden, row-major
    std::vector<double> b2; // 2

    static SurrogateModel init(int hidden_units, std::uint64_t seed);

    /// Class logits for a single input.
    std::array<double, 2> logits(const std::array<double, 2>& x) const;

    /// Ranking score for AUC: logit margin of the positive class.
    double score(const std::array<double, 2>& x) const;

    bool finite() const;
};

/// Softmax with max-subtraction. Throws NonFiniteInputError on non-finite z.
std::vector<double> softmax(const std::vector<double>& z);

enum class TrainStage {
    output_only, // stage 1: update w2/b2 only
    all_layers,  // stage 2: update everything
};

/// Loss value and full gradient of the stage objective: mean class-weighted
/// softmax cross-entropy plus 0.5*decay*||W||^2 over the stage's trained
/// weight matrices (biases are not decayed). Gradients for parameters not
/// trained in the stage are still those of the objective (decay-free).
struct LossGrad {
    double loss = 0.0;
    SurrogateModel grad; // same shapes as the model
};

LossGrad weighted_loss_and_grad(const SurrogateModel& m, const LabeledPoints& batch,
                                double pos_weight, double neg_weight, double decay,
                                TrainStage stage);

/// Full-batch gradient-descent training in two stages. Stage 1 trains the
/// output layer at init_learningrate under weight_decay; stage 2 trains all
/// layers at init_learningrate * all_layer_multiplier under weight_decay2.
/// Validation AUC is appended after every epoch; training stops early once
/// it has not improved for cfg.patience consecutive epochs. The test AUC is
/// computed once at the end. Throws DivergedError when the loss or weights
/// leave the finite range.
EpochHistory train_surrogate(const HyperParams& hp, const SurrogateConfig& cfg);

/// Same, returning the trained model (used by the baseline command).
EpochHistory train_surrogate(const HyperParams& hp, const SurrogateConfig& cfg,
                             SurrogateModel* out_model);

} // namespace gae2e
