#pragma once

#include <functional>
#include <memory>

#include "gae2e/eval.hpp"
#include "gae2e/param_space.hpp"

namespace gae2e {

/// Executes fitness evaluations for one run. Thread-safe: may be invoked
/// from multiple evaluation slots concurrently; external child processes
/// are capped at spec.max_concurrent_processes per Evaluator.
class Evaluator {
public:
    Evaluator(EvaluatorSpec spec, ParamSpace space);
    ~Evaluator();

    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    const EvaluatorSpec& spec() const { return spec_; }
    const ParamSpace& space() const { return space_; }

    /// One evaluation attempt. Throws on failure (Timeout,
    /// MalformedResponse, NonZeroExit, Diverged, ...).
    double fitness(const ParamVector& v, std::uint64_t seed) const;

    /// Retry-then-penalize wrapper: up to spec.retries + 1 attempts, then a
    /// failed result with fitness 0.0. Never throws on evaluation failure.
    EvalResult run_task(const EvalTask& task, const std::string& worker_id) const;

private:
    double attempt(const std::vector<std::string>& names, const ParamVector& v,
                   std::uint64_t eval_id, std::uint64_t seed) const;

    EvaluatorSpec spec_;
    ParamSpace space_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Analytic landscape value in [0, 1]; maximum 1.0.
double landscape_fitness(Landscape l, const ParamVector& v, const ParamSpace& space);

/// Runs the external-command protocol once: writes one structured line to
/// the child's stdin, reads one line back, enforces the timeout and a zero
/// exit code. Exposed for protocol tests.
double run_external_command(const std::string& command, const std::string& input_line,
                            double timeout_seconds);

/// In-process generation evaluator with a configurable number of concurrent
/// slots. Results merge in chromosome-index order.
class LocalExecutor : public Executor {
public:
    LocalExecutor(EvaluatorSpec spec, ParamSpace space, int slots = 1,
                  std::string worker_id = "local");
    std::vector<EvalResult> run(const std::vector<EvalTask>& tasks) override;

private:
    Evaluator evaluator_;
    int slots_;
    std::string worker_id_;
};

/// Executor over an arbitrary fitness function (used by the bindings and in
/// tests). The function must return a value in [0, 1]; exceptions become
/// penalty results.
class FunctionExecutor : public Executor {
public:
    using Fn = std::function<double(const ParamVector&, std::uint64_t seed)>;
    explicit FunctionExecutor(Fn fn, std::string worker_id = "local");
    std::vector<EvalResult> run(const std::vector<EvalTask>& tasks) override;

private:
    Fn fn_;
    std::string worker_id_;
};

} // namespace gae2e
