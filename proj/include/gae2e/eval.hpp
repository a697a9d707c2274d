#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gae2e/param_space.hpp"
#include "gae2e/surrogate.hpp"

namespace gae2e {

enum class EvaluatorKind { synthetic, surrogate, external };
enum class Landscape { sphere, rastrigin, plateau };
enum class FitnessSource { mean_val_auc, final_test_auc };

std::string to_string(EvaluatorKind k);
std::string to_string(Landscape l);
std::string to_string(FitnessSource s);
EvaluatorKind evaluator_kind_from_string(const std::string& s);
Landscape landscape_from_string(const std::string& s);
FitnessSource fitness_source_from_string(const std::string& s);

/// What to run per fitness evaluation and how to treat its failures.
struct EvaluatorSpec {
    EvaluatorKind kind = EvaluatorKind::synthetic;
    Landscape landscape = Landscape::sphere; // synthetic kind
    std::string command;                     // external kind
    double timeout_seconds = 10.0;
    int retries = 2;
    int max_concurrent_processes = 2; // cap on external child processes
    double delay_seconds = 0.0;       // artificial per-evaluation delay (benchmarks)
    FitnessSource fitness_source = FitnessSource::mean_val_auc;
    SurrogateConfig surrogate;

    /// Throws ConfigError on mutually required fields (external needs a
    /// command and so on).
    void validate() const;
};

/// Unit of fitness work. Self-contained: carries everything a worker needs.
struct EvalTask {
    std::uint64_t eval_id = 0;
    int generation = 0;
    int chromosome_index = 0;
    std::vector<std::string> names;
    ParamVector values;
    EvaluatorSpec evaluator;
    std::uint64_t seed = 0;
};

enum class EvalStatus { ok, failed };

std::string to_string(EvalStatus s);

struct EvalResult {
    std::uint64_t eval_id = 0;
    double fitness = 0.0; // 0.0 whenever status == failed (penalty policy)
    EvalStatus status = EvalStatus::ok;
    double wall_seconds = 0.0;
    std::string worker_id;
    std::string error; // empty on success
};

/// Evaluates one generation's tasks. Implementations must return exactly one
/// result per task, ordered by chromosome_index, regardless of completion
/// order. Failures never escape; they come back as penalty results.
class Executor {
public:
    virtual ~Executor() = default;
    virtual std::vector<EvalResult> run(const std::vector<EvalTask>& tasks) = 0;
};

} // namespace gae2e
