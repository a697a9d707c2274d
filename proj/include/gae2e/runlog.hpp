#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "gae2e/param_space.hpp"

namespace gae2e {

/// One line of the evaluation log.
struct EvalRecord {
    std::string timestamp; // wall clock, informational only
    std::uint64_t eval_id = 0;
    int generation = 0;
    std::vector<std::string> names;
    ParamVector values;
    std::string chromosome_hex;
    double fitness = 0.0;
    std::string status; // "ok" | "failed" | "carried"
    double wall_seconds = 0.0;
    std::string worker_id;
    std::string error;
};

/// One row of the per-generation summary CSV.
struct GenerationSummary {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    ParamVector best_parameters;
    std::uint64_t evaluations_so_far = 0;
};

/// Receives evaluation records and generation summaries as the search runs.
class RunSink {
public:
    virtual ~RunSink() = default;
    virtual void append_eval(const EvalRecord& record) = 0;
    virtual void write_summary(const GenerationSummary& summary) = 0;
};

/// Append-only run persistence: evaluations as one JSON object per line,
/// summaries as CSV. Single writer; every append is flushed before the
/// result counts as merged. Throws IoFailureError on any write problem —
/// a run without a log is invalid.
class RunLogger final : public RunSink {
public:
    RunLogger(const std::string& eval_log_path, const std::string& summary_csv_path,
              const ParamSpace& space, std::uint64_t seed,
              const std::string& evaluator_kind);
    void append_eval(const EvalRecord& record) override;
    void write_summary(const GenerationSummary& summary) override;

private:
    std::ofstream eval_out_;
    std::ofstream summary_out_;
    std::vector<std::string> names_;
};

/// Parsed evaluation log.
struct LoadedLog {
    std::uint64_t seed = 0;
    std::string evaluator_kind;
    std::vector<ParamSpec> space_specs;
    std::vector<EvalRecord> records;
};

/// Reads an evaluation log. Throws MalformedLogError on a missing header or
/// unparseable line; a file truncated at a line boundary parses up to the
/// truncation point.
LoadedLog load_eval_log(const std::string& path);

/// Recomputes per-generation summaries from raw records: a pure function of
/// the records, re-derivable at any time.
std::vector<GenerationSummary> summarize(const LoadedLog& log);

/// Parses a summary CSV written by RunLogger (for cross-checking).
std::vector<GenerationSummary> load_summary_csv(const std::string& path,
                                                std::size_t dimension);

/// Renders the post-run report: per-generation table, best configuration
/// next to the space defaults, and the generation that first reached the
/// final best fitness.
std::string render_report(const LoadedLog& log);

/// ISO-8601 UTC timestamp of now.
std::string now_iso8601();

} // namespace gae2e
