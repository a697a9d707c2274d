#include "gae2e/eval.hpp"

#include "gae2e/errors.hpp"

namespace gae2e {

std::string to_string(EvaluatorKind k) {
    switch (k) {
        case EvaluatorKind::synthetic: return "synthetic";
        case EvaluatorKind::surrogate: return "surrogate";
        case EvaluatorKind::external: return "external";
    }
    return "synthetic";
}

std::string to_string(Landscape l) {
    switch (l) {
        case Landscape::sphere: return "sphere";
        case Landscape::rastrigin: return "rastrigin";
        case Landscape::plateau: return "plateau";
    }
    return "sphere";
}

std::string to_string(FitnessSource s) {
    return s == FitnessSource::mean_val_auc ? "mean_val_auc" : "final_test_auc";
}

std::string to_string(EvalStatus s) {
    return s == EvalStatus::ok ? "ok" : "failed";
}

EvaluatorKind evaluator_kind_from_string(const std::string& s) {
    if (s == "synthetic") return EvaluatorKind::synthetic;
    if (s == "surrogate") return EvaluatorKind::surrogate;
    if (s == "external") return EvaluatorKind::external;
    throw ConfigError("unknown evaluator kind '" + s + "'");
}

Landscape landscape_from_string(const std::string& s) {
    if (s == "sphere") return Landscape::sphere;
    if (s == "rastrigin" || s == "rastrigin-like") return Landscape::rastrigin;
    if (s == "plateau") return Landscape::plateau;
    throw ConfigError("unknown landscape '" + s + "'");
}

FitnessSource fitness_source_from_string(const std::string& s) {
    if (s == "mean_val_auc") return FitnessSource::mean_val_auc;
    if (s == "final_test_auc") return FitnessSource::final_test_auc;
    throw ConfigError("unknown fitness source '" + s + "'");
}

void EvaluatorSpec::validate() const {
    if (kind == EvaluatorKind::external && command.empty()) {
        throw ConfigError("external evaluator needs a command");
    }
    if (timeout_seconds <= 0.0) {
        throw ConfigError("timeout_seconds must be positive");
    }
    if (retries < 0) {
        throw ConfigError("retries must be non-negative");
    }
    if (max_concurrent_processes < 1) {
        throw ConfigError("max_concurrent_processes must be at least 1");
    }
    if (delay_seconds < 0.0) {
        throw ConfigError("delay_seconds must be non-negative");
    }
    if (kind == EvaluatorKind::surrogate) {
        surrogate.validate();
    }
}

} // namespace gae2e
