#include "gae2e/runlog.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gae2e/errors.hpp"

namespace gae2e {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunLogger::RunLogger(const std::string& eval_log_path,
                     const std::string& summary_csv_path, const ParamSpace& space,
                     std::uint64_t seed, const std::string& evaluator_kind)
    : names_(space.names()) {
    eval_out_.open(eval_log_path, std::ios::out | std::ios::trunc);
    summary_out_.open(summary_csv_path, std::ios::out | std::ios::trunc);
    if (!eval_out_ || !summary_out_) {
        throw IoFailureError("cannot open run log files '" + eval_log_path + "' / '" +
                             summary_csv_path + "'");
    }

    nlohmann::json header;
    header["type"] = "header";
    header["seed"] = seed;
    header["evaluator"] = evaluator_kind;
    auto specs = nlohmann::json::array();
    for (const auto& s : space.specs()) {
        specs.push_back({{"name", s.name},
                         {"lower", s.lower},
                         {"upper", s.upper},
                         {"default", s.def}});
    }
    header["space"] = specs;
    eval_out_ << header.dump() << "\n";
    eval_out_.flush();

    summary_out_ << "generation,best_fitness,mean_fitness";
    for (const auto& n : names_) summary_out_ << ",best_" << n;
    summary_out_ << ",evals\n";
    summary_out_.flush();
    if (!eval_out_ || !summary_out_) {
        throw IoFailureError("failed writing run log headers");
    }
}

void RunLogger::append_eval(const EvalRecord& record) {
    nlohmann::json j;
    j["ts"] = record.timestamp;
    j["eval_id"] = record.eval_id;
    j["generation"] = record.generation;
    nlohmann::json params;
    for (std::size_t i = 0; i < record.names.size(); ++i) {
        params[record.names[i]] = record.values[i];
    }
    j["params"] = params;
    j["chromosome"] = record.chromosome_hex;
    j["fitness"] = record.fitness;
    j["status"] = record.status;
    j["wall_seconds"] = record.wall_seconds;
    j["worker_id"] = record.worker_id;
    if (!record.error.empty()) j["error"] = record.error;
    eval_out_ << j.dump() << "\n";
    eval_out_.flush();
    if (!eval_out_) throw IoFailureError("failed appending to the evaluation log");
}

void RunLogger::write_summary(const GenerationSummary& summary) {
    summary_out_ << summary.generation << "," << format_double(summary.best_fitness)
                 << "," << format_double(summary.mean_fitness);
    for (double v : summary.best_parameters) summary_out_ << "," << format_double(v);
    summary_out_ << "," << summary.evaluations_so_far << "\n";
    summary_out_.flush();
    if (!summary_out_) throw IoFailureError("failed appending to the summary CSV");
}

LoadedLog load_eval_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedLogError("cannot open evaluation log '" + path + "'");

    LoadedLog log;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception&) {
            // Tolerate exactly one trailing partial line (crash mid-append).
            if (in.peek() == EOF && line_no > 1) break;
            throw MalformedLogError("unparseable log line " + std::to_string(line_no));
        }
        if (!have_header) {
            if (!j.contains("type") || j.at("type") != "header") {
                throw MalformedLogError("evaluation log lacks a header line");
            }
            log.seed = j.value("seed", std::uint64_t{0});
            log.evaluator_kind = j.value("evaluator", std::string{});
            for (const auto& s : j.at("space")) {
                log.space_specs.push_back({s.at("name").get<std::string>(),
                                           s.at("lower").get<double>(),
                                           s.at("upper").get<double>(),
                                           s.at("default").get<double>()});
            }
            have_header = true;
            continue;
        }
        EvalRecord r;
        r.timestamp = j.value("ts", std::string{});
        r.eval_id = j.at("eval_id").get<std::uint64_t>();
        r.generation = j.at("generation").get<int>();
        for (const auto& spec : log.space_specs) {
            r.names.push_back(spec.name);
            r.values.push_back(j.at("params").at(spec.name).get<double>());
        }
        r.chromosome_hex = j.value("chromosome", std::string{});
        r.fitness = j.at("fitness").get<double>();
        r.status = j.at("status").get<std::string>();
        r.wall_seconds = j.value("wall_seconds", 0.0);
        r.worker_id = j.value("worker_id", std::string{});
        r.error = j.value("error", std::string{});
        log.records.push_back(std::move(r));
    }
    if (!have_header) throw MalformedLogError("evaluation log is empty");
    if (log.records.empty()) throw MalformedLogError("evaluation log has no records");
    return log;
}

std::vector<GenerationSummary> summarize(const LoadedLog& log) {
    std::map<int, std::vector<const EvalRecord*>> by_gen;
    for (const auto& r : log.records) by_gen[r.generation].push_back(&r);

    std::vector<GenerationSummary> out;
    std::uint64_t evals = 0;
    for (const auto& [gen, records] : by_gen) {
        GenerationSummary s;
        s.generation = gen;
        double sum = 0.0;
        const EvalRecord* best = nullptr;
        for (const auto* r : records) {
            sum += r->fitness;
            if (best == nullptr || r->fitness > best->fitness) best = r;
            if (r->status != "carried") ++evals;
        }
        s.best_fitness = best->fitness;
        s.mean_fitness = sum / static_cast<double>(records.size());
        s.best_parameters = best->values;
        s.evaluations_so_far = evals;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GenerationSummary> load_summary_csv(const std::string& path,
                                                std::size_t dimension) {
    std::ifstream in(path);
    if (!in) throw MalformedLogError("cannot open summary CSV '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw MalformedLogError("summary CSV is empty");

    std::vector<GenerationSummary> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 3 + dimension + 1) {
            throw MalformedLogError("summary CSV row has " +
                                    std::to_string(cells.size()) + " cells");
        }
        GenerationSummary s;
        s.generation = std::stoi(cells[0]);
        s.best_fitness = std::stod(cells[1]);
        s.mean_fitness = std::stod(cells[2]);
        for (std::size_t i = 0; i < dimension; ++i) {
            s.best_parameters.push_back(std::stod(cells[3 + i]));
        }
        s.evaluations_so_far = std::stoull(cells[3 + dimension]);
        out.push_back(std::move(s));
    }
    return out;
}

std::string render_report(const LoadedLog& log) {
    const auto summaries = summarize(log);

    // Best record overall.
    const EvalRecord* best = nullptr;
    for (const auto& r : log.records) {
        if (best == nullptr || r.fitness > best->fitness) best = &r;
    }

    int first_best_gen = summaries.back().generation;
    const double final_best = summaries.back().best_fitness;
    for (const auto& s : summaries) {
        if (s.best_fitness >= final_best - 1e-12) {
            first_best_gen = s.generation;
            break;
        }
    }

    std::ostringstream os;
    os << "Run report\n";
    os << "  evaluator: " << log.evaluator_kind << "  seed: " << log.seed << "\n";
    os << "  generations: " << summaries.size()
       << "  evaluations: " << summaries.back().evaluations_so_far << "\n";
    os << "  best fitness: " << format_double(best->fitness)
       << " (eval " << best->eval_id << ", generation " << best->generation << ")\n";
    os << "  first generation at final best: " << first_best_gen << "\n\n";

    os << "  parameter                 default       best-found\n";
    for (std::size_t i = 0; i < log.space_specs.size(); ++i) {
        char row[128];
        std::snprintf(row, sizeof(row), "  %-24s %-13g %-13g\n",
                      log.space_specs[i].name.c_str(), log.space_specs[i].def,
                      best->values[i]);
        os << row;
    }

    os << "\n  generation  best_fitness  mean_fitness  evals\n";
    for (const auto& s : summaries) {
        char row[128];
        std::snprintf(row, sizeof(row), "  %-11d %-13.6f %-13.6f %llu\n", s.generation,
                      s.best_fitness, s.mean_fitness,
                      static_cast<unsigned long long>(s.evaluations_so_far));
        os << row;
    }
    return os.str();
}

} // namespace gae2e
