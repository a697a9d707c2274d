#include "gae2e/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gae2e/errors.hpp"
#include "gae2e/rng.hpp"

namespace gae2e {

void SurrogateConfig::validate() const {
    if (n_train <= 0 || n_val <= 0 || n_test <= 0) {
        throw ConfigError("surrogate sample counts must be positive");
    }
    if (stage1_epochs <= 0 || stage2_epochs <= 0) {
        throw ConfigError("surrogate stage epoch counts must be positive");
    }
    if (patience <= 0 || patience > stage1_epochs + stage2_epochs) {
        throw ConfigError("patience must be in [1, total epochs]");
    }
    if (!(class_imbalance > 0.0 && class_imbalance < 1.0)) {
        throw ConfigError("class_imbalance must lie in (0, 1)");
    }
    if (hidden_units <= 0) {
        throw ConfigError("hidden_units must be positive");
    }
}

HyperParams HyperParams::from_vector(const ParamVector& v, const ParamSpace& space) {
    space.check_dimension(v);
    if (space.dimension() != 6) {
        throw ConfigError("the surrogate evaluator needs a six-parameter space, got " +
                          std::to_string(space.dimension()));
    }
    static const char* kCanonical[6] = {
        "pos-cls-weight",   "neg-cls-weight",    "weight-decay",
        "weight-decay2",    "init-learningrate", "all-layer-multiplier",
    };
    // Prefer name-based mapping; fall back to positional order.
    double slot[6];
    bool by_name = true;
    const auto names = space.names();
    for (int k = 0; k < 6; ++k) {
        auto it = std::find(names.begin(), names.end(), kCanonical[k]);
        if (it == names.end()) {
            by_name = false;
            break;
        }
        slot[k] = v[static_cast<std::size_t>(it - names.begin())];
    }
    if (!by_name) {
        for (int k = 0; k < 6; ++k) slot[k] = v[static_cast<std::size_t>(k)];
    }
    HyperParams hp;
    hp.pos_cls_weight = slot[0];
    hp.neg_cls_weight = slot[1];
    hp.weight_decay = slot[2];
    hp.weight_decay2 = slot[3];
    hp.init_learningrate = slot[4];
    hp.all_layer_multiplier = slot[5];
    hp.validate();
    return hp;
}

void HyperParams::validate() const {
    const double fields[] = {pos_cls_weight,    neg_cls_weight, weight_decay,
                             weight_decay2,     init_learningrate,
                             all_layer_multiplier};
    for (double f : fields) {
        if (!std::isfinite(f) || f < 0.0) {
            throw NonFiniteInputError("hyperparameters must be finite and non-negative");
        }
    }
}

namespace {

// Cluster geometry: positives around (+u, +u), negatives around (-u, -u),
// unit isotropic noise. Overlapping enough that training quality matters.
constexpr double kClusterOffset = 0.8;

LabeledPoints sample_split(int n, double imbalance, Rng& rng) {
    const auto n_pos = static_cast<int>(std::clamp<long long>(
        std::llround(static_cast<double>(n) * imbalance), 1, n - 1));
    LabeledPoints pts;
    pts.x.reserve(static_cast<std::size_t>(n));
    pts.y.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const bool pos = i < n_pos;
        const double c = pos ? kClusterOffset : -kClusterOffset;
        pts.x.push_back({c + rng.gaussian(), c + rng.gaussian()});
        pts.y.push_back(pos);
    }
    return pts;
}

} // namespace

SurrogateData generate_surrogate_data(const SurrogateConfig& cfg) {
    cfg.validate();
    SurrogateData data;
    Rng train_rng(derive_seed(cfg.data_seed, "surrogate-train"));
    Rng val_rng(derive_seed(cfg.data_seed, "surrogate-val"));
    Rng test_rng(derive_seed(cfg.data_seed, "surrogate-test"));
    data.train = sample_split(cfg.n_train, cfg.class_imbalance, train_rng);
    data.val = sample_split(cfg.n_val, cfg.class_imbalance, val_rng);
    data.test = sample_split(cfg.n_test, cfg.class_imbalance, test_rng);
    return data;
}

SurrogateModel SurrogateModel::init(int hidden_units, std::uint64_t seed) {
    SurrogateModel m;
    m.hidden = hidden_units;
    const auto h = static_cast<std::size_t>(hidden_units);
    m.w1.resize(h * 2);
    m.b1.assign(h, 0.0);
    m.w2.resize(2 * h);
    m.b2.assign(2, 0.0);
    Rng rng(derive_seed(seed, "surrogate-weights"));
    for (auto& w : m.w1) w = 0.7 * rng.gaussian();
    for (auto& w : m.w2) w = 0.5 * rng.gaussian();
    return m;
}

std::array<double, 2> SurrogateModel::logits(const std::array<double, 2>& x) const {
    const auto h = static_cast<std::size_t>(hidden);
    std::array<double, 2> z = {b2[0], b2[1]};
    for (std::size_t j = 0; j < h; ++j) {
        const double a = w1[j * 2] * x[0] + w1[j * 2 + 1] * x[1] + b1[j];
        const double hj = std::tanh(a);
        z[0] += w2[j] * hj;
        z[1] += w2[h + j] * hj;
    }
    return z;
}

double SurrogateModel::score(const std::array<double, 2>& x) const {
    const auto z = logits(x);
    return z[1] - z[0]; // class 1 = positive
}

bool SurrogateModel::finite() const {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(),
                           [](double x) { return std::isfinite(x); });
    };
    return ok(w1) && ok(b1) && ok(w2) && ok(b2);
}

std::vector<double> softmax(const std::vector<double>& z) {
    for (double v : z) {
        if (!std::isfinite(v)) {
            throw NonFiniteInputError("softmax input must be finite");
        }
    }
    const double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> out(z.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = std::exp(z[i] - zmax);
        sum += out[i];
    }
    for (auto& v : out) v /= sum;
    return out;
}

LossGrad weighted_loss_and_grad(const SurrogateModel& m, const LabeledPoints& batch,
                                double pos_weight, double neg_weight, double decay,
                                TrainStage stage) {
    const auto h = static_cast<std::size_t>(m.hidden);
    const auto n = batch.size();

    LossGrad out;
    out.grad.hidden = m.hidden;
    out.grad.w1.assign(h * 2, 0.0);
    out.grad.b1.assign(h, 0.0);
    out.grad.w2.assign(2 * h, 0.0);
    out.grad.b2.assign(2, 0.0);

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> hid(h);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = batch.x[i];
        const int y = batch.y[i] ? 1 : 0;
        const double w = batch.y[i] ? pos_weight : neg_weight;

        std::array<double, 2> z = {m.b2[0], m.b2[1]};
        for (std::size_t j = 0; j < h; ++j) {
            const double a = m.w1[j * 2] * x[0] + m.w1[j * 2 + 1] * x[1] + m.b1[j];
            hid[j] = std::tanh(a);
            z[0] += m.w2[j] * hid[j];
            z[1] += m.w2[h + j] * hid[j];
        }

        // Stable cross-entropy: log-sum-exp minus the true-class logit.
        const double zmax = std::max(z[0], z[1]);
        const double lse = zmax + std::log(std::exp(z[0] - zmax) + std::exp(z[1] - zmax));
        out.loss += w * inv_n * (lse - z[static_cast<std::size_t>(y)]);

        const double p0 = std::exp(z[0] - lse);
        const double p1 = std::exp(z[1] - lse);
        const std::array<double, 2> dz = {w * inv_n * (p0 - (y == 0 ? 1.0 : 0.0)),
                                          w * inv_n * (p1 - (y == 1 ? 1.0 : 0.0))};

        out.grad.b2[0] += dz[0];
        out.grad.b2[1] += dz[1];
        for (std::size_t j = 0; j < h; ++j) {
            out.grad.w2[j] += dz[0] * hid[j];
            out.grad.w2[h + j] += dz[1] * hid[j];
            const double dh = m.w2[j] * dz[0] + m.w2[h + j] * dz[1];
            const double da = (1.0 - hid[j] * hid[j]) * dh;
            out.grad.b1[j] += da;
            out.grad.w1[j * 2] += da * x[0];
            out.grad.w1[j * 2 + 1] += da * x[1];
        }
    }

    // L2 penalty on the stage's trained weight matrices; biases excluded.
    double penalty = 0.0;
    for (std::size_t k = 0; k < m.w2.size(); ++k) {
        penalty += m.w2[k] * m.w2[k];
        out.grad.w2[k] += decay * m.w2[k];
    }
    if (stage == TrainStage::all_layers) {
        for (std::size_t k = 0; k < m.w1.size(); ++k) {
            penalty += m.w1[k] * m.w1[k];
            out.grad.w1[k] += decay * m.w1[k];
        }
    }
    out.loss += 0.5 * decay * penalty;
    return out;
}

namespace {

double model_auc(const SurrogateModel& m, const LabeledPoints& pts) {
    ScoredLabels sl;
    sl.scores.reserve(pts.size());
    sl.labels.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sl.scores.push_back(m.score(pts.x[i]));
        sl.labels.push_back(pts.y[i]);
    }
    return roc_auc(sl);
}

} // namespace

EpochHistory train_surrogate(const HyperParams& hp, const SurrogateConfig& cfg) {
    return train_surrogate(hp, cfg, nullptr);
}

EpochHistory train_surrogate(const HyperParams& hp, const SurrogateConfig& cfg,
                             SurrogateModel* out_model) {
    hp.validate();
    cfg.validate();
    const SurrogateData data = generate_surrogate_data(cfg);
    SurrogateModel model = SurrogateModel::init(cfg.hidden_units, cfg.data_seed);
    const auto h = static_cast<std::size_t>(model.hidden);

    EpochHistory history;
    const int total_epochs = cfg.stage1_epochs + cfg.stage2_epochs;
    double best_val = -std::numeric_limits<double>::infinity();
    int stale = 0;

    for (int epoch = 0; epoch < total_epochs; ++epoch) {
        const bool stage1 = epoch < cfg.stage1_epochs;
        const TrainStage stage = stage1 ? TrainStage::output_only : TrainStage::all_layers;
        const double lr = stage1 ? hp.init_learningrate
                                 : hp.init_learningrate * hp.all_layer_multiplier;
        const double decay = stage1 ? hp.weight_decay : hp.weight_decay2;

        const LossGrad lg = weighted_loss_and_grad(model, data.train, hp.pos_cls_weight,
                                                   hp.neg_cls_weight, decay, stage);
        if (!std::isfinite(lg.loss)) {
            throw DivergedError("training loss became non-finite at epoch " +
                                std::to_string(epoch));
        }

        for (std::size_t k = 0; k < 2 * h; ++k) model.w2[k] -= lr * lg.grad.w2[k];
        model.b2[0] -= lr * lg.grad.b2[0];
        model.b2[1] -= lr * lg.grad.b2[1];
        if (stage == TrainStage::all_layers) {
            for (std::size_t k = 0; k < 2 * h; ++k) model.w1[k] -= lr * lg.grad.w1[k];
            for (std::size_t k = 0; k < h; ++k) model.b1[k] -= lr * lg.grad.b1[k];
        }
        if (!model.finite()) {
            throw DivergedError("model weights became non-finite at epoch " +
                                std::to_string(epoch));
        }

        const double val_auc = model_auc(model, data.val);
        history.per_epoch_val_auc.push_back(val_auc);

        if (val_auc > best_val) {
            best_val = val_auc;
            stale = 0;
        } else if (++stale >= cfg.patience) {
            break;
        }
    }

    history.final_test_auc = model_auc(model, data.test);
    if (out_model != nullptr) *out_model = model;
    return history;
}

} // namespace gae2e
