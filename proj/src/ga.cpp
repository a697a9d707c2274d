#include "gae2e/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gae2e/codec.hpp"
#include "gae2e/errors.hpp"

namespace gae2e {

void GAConfig::validate() const {
    if (population_size < 2) {
        throw PopulationTooSmallError("population_size must be at least 2");
    }
    if (generations < 1) throw ConfigError("generations must be positive");
    if (crossover_prob < 0.0 || crossover_prob > 1.0) {
        throw ConfigError("crossover_prob must lie in [0, 1]");
    }
    if (mutation_prob && (*mutation_prob < 0.0 || *mutation_prob > 1.0)) {
        throw ConfigError("mutation_prob must lie in [0, 1]");
    }
    if (eta_c <= 0.0 || eta_m <= 0.0) {
        throw ConfigError("distribution indices eta_c and eta_m must be positive");
    }
    if (elitism < 1 || elitism >= population_size) {
        throw ConfigError("elitism must lie in [1, population_size)");
    }
}

double GAConfig::effective_mutation_prob(const ParamSpace& space) const {
    return mutation_prob.value_or(1.0 / static_cast<double>(space.dimension()));
}

std::pair<double, double> sbx_pair(double p1, double p2, double u, double eta_c) {
    double beta;
    if (u <= 0.5) {
        beta = std::pow(2.0 * u, 1.0 / (eta_c + 1.0));
    } else {
        beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
    }
    const double sum = p1 + p2;
    const double diff = std::abs(p2 - p1);
    return {0.5 * (sum - beta * diff), 0.5 * (sum + beta * diff)};
}

double polynomial_mutate_value(double p, double lower, double upper, double u,
                               double eta_m) {
    double out;
    if (u <= 0.5) {
        const double delta_l = std::pow(2.0 * u, 1.0 / (1.0 + eta_m)) - 1.0;
        out = p + delta_l * (p - lower);
    } else {
        const double delta_r = 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (1.0 + eta_m));
        out = p + delta_r * (upper - p);
    }
    return std::clamp(out, lower, upper);
}

Population initialize_population(const ParamSpace& space, int n, Rng& rng) {
    if (n < 2) throw PopulationTooSmallError("need at least 2 individuals");
    Population pop;
    pop.generation = 0;
    pop.individuals.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Individual ind;
        ind.chromosome.reserve(space.dimension());
        for (const auto& s : space.specs()) {
            ind.chromosome.push_back(rng.uniform(s.lower, s.upper));
        }
        pop.individuals.push_back(std::move(ind));
    }
    return pop;
}

const Individual& binary_tournament_select(const Population& pop, Rng& rng) {
    const auto n = pop.individuals.size();
    const auto i = static_cast<std::size_t>(rng.bounded(n));
    const auto j = static_cast<std::size_t>(rng.bounded(n));
    const Individual& a = pop.individuals[i];
    const Individual& b = pop.individuals[j];
    if (!a.fitness || !b.fitness) {
        throw UnevaluatedIndividualError("tournament on an unevaluated individual");
    }
    // Strictly greater wins; a tie keeps the first draw.
    return *b.fitness > *a.fitness ? b : a;
}

std::pair<ParamVector, ParamVector> sbx_crossover(const ParamVector& p1,
                                                  const ParamVector& p2,
                                                  const GAConfig& cfg,
                                                  const ParamSpace& space, Rng& rng) {
    space.check_dimension(p1);
    space.check_dimension(p2);
    if (rng.uniform01() >= cfg.crossover_prob) {
        return {p1, p2};
    }
    ParamVector c1(p1.size());
    ParamVector c2(p2.size());
    for (std::size_t k = 0; k < p1.size(); ++k) {
        const auto [a, b] = sbx_pair(p1[k], p2[k], rng.uniform01(), cfg.eta_c);
        const auto& s = space.spec(k);
        c1[k] = std::clamp(a, s.lower, s.upper);
        c2[k] = std::clamp(b, s.lower, s.upper);
    }
    return {std::move(c1), std::move(c2)};
}

ParamVector polynomial_mutation(const ParamVector& p, const GAConfig& cfg,
                                const ParamSpace& space, Rng& rng) {
    space.check_dimension(p);
    const double pm = cfg.effective_mutation_prob(space);
    ParamVector out(p);
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (rng.uniform01() < pm) {
            const auto& s = space.spec(k);
            out[k] = polynomial_mutate_value(out[k], s.lower, s.upper, rng.uniform01(),
                                             cfg.eta_m);
        }
    }
    return out;
}

Population evolve_generation(const Population& pop, const GAConfig& cfg,
                             const ParamSpace& space, GaRngs& rngs) {
    const auto n = pop.individuals.size();
    for (const auto& ind : pop.individuals) {
        if (!ind.fitness) {
            throw UnevaluatedIndividualError("evolve on an unevaluated population");
        }
    }

    // Elites by fitness, ties broken by lower index.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *pop.individuals[a].fitness > *pop.individuals[b].fitness;
    });

    Population next;
    next.generation = pop.generation + 1;
    next.individuals.reserve(n);
    const auto n_elite = static_cast<std::size_t>(cfg.elitism);
    for (std::size_t e = 0; e < n_elite && e < n; ++e) {
        Individual elite = pop.individuals[order[e]];
        elite.carried = true;
        next.individuals.push_back(std::move(elite));
    }

    while (next.individuals.size() < n) {
        const Individual& parent1 = binary_tournament_select(pop, rngs.selection);
        const Individual& parent2 = binary_tournament_select(pop, rngs.selection);
        auto [c1, c2] = sbx_crossover(parent1.chromosome, parent2.chromosome, cfg, space,
                                      rngs.crossover);
        Individual child1;
        child1.chromosome = polynomial_mutation(c1, cfg, space, rngs.mutation);
        next.individuals.push_back(std::move(child1));
        if (next.individuals.size() < n) {
            Individual child2;
            child2.chromosome = polynomial_mutation(c2, cfg, space, rngs.mutation);
            next.individuals.push_back(std::move(child2));
        }
    }
    return next;
}

namespace {

GenerationStats stats_of(const Population& pop) {
    GenerationStats s;
    double sum = 0.0;
    double best = -1.0;
    for (const auto& ind : pop.individuals) {
        sum += *ind.fitness;
        best = std::max(best, *ind.fitness);
    }
    s.best_fitness = best;
    s.mean_fitness = sum / static_cast<double>(pop.size());
    return s;
}

} // namespace

SearchResult run_ga(const ParamSpace& space, const GAConfig& cfg,
                    const EvaluatorSpec& evaluator_spec, Executor& executor,
                    RunSink* sink) {
    cfg.validate();
    evaluator_spec.validate();

    GaRngs rngs = GaRngs::from_seed(cfg.seed);
    Population pop = initialize_population(space, cfg.population_size, rngs.init);
    const auto names = space.names();

    SearchResult result;
    std::uint64_t eval_counter = 0;
    bool have_best = false;

    for (int gen = 0; gen < cfg.generations; ++gen) {
        if (gen > 0) pop = evolve_generation(pop, cfg, space, rngs);

        // Tasks for everything not carried over; seeds precomputed from the
        // run seed and eval id so execution placement cannot matter.
        std::vector<EvalTask> tasks;
        std::vector<std::size_t> task_slot;
        for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
            Individual& ind = pop.individuals[i];
            if (ind.fitness) continue;
            EvalTask t;
            t.eval_id = ++eval_counter;
            t.generation = gen;
            t.chromosome_index = static_cast<int>(i);
            t.names = names;
            t.values = ind.chromosome;
            t.evaluator = evaluator_spec;
            t.seed = eval_seed(cfg.seed, t.eval_id);
            ind.eval_id = t.eval_id;
            tasks.push_back(std::move(t));
            task_slot.push_back(i);
        }

        std::vector<EvalResult> results = executor.run(tasks);
        if (results.size() != tasks.size()) {
            throw EvaluatorFailure("executor returned " + std::to_string(results.size()) +
                                   " results for " + std::to_string(tasks.size()) +
                                   " tasks");
        }

        // Merge in chromosome-index order; log each record before it counts.
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            const EvalResult& r = results[k];
            if (r.eval_id != tasks[k].eval_id) {
                throw EvaluatorFailure("executor results out of order");
            }
            Individual& ind = pop.individuals[task_slot[k]];
            if (sink != nullptr) {
                EvalRecord rec;
                rec.timestamp = now_iso8601();
                rec.eval_id = r.eval_id;
                rec.generation = gen;
                rec.names = names;
                rec.values = ind.chromosome;
                rec.chromosome_hex = encode(space.clamp(ind.chromosome), space).to_hex();
                rec.fitness = r.fitness;
                rec.status = to_string(r.status);
                rec.wall_seconds = r.wall_seconds;
                rec.worker_id = r.worker_id;
                rec.error = r.error;
                sink->append_eval(rec);
            }
            ind.fitness = r.fitness; // failed results carry the 0.0 penalty
        }
        if (sink != nullptr) {
            for (const auto& ind : pop.individuals) {
                if (!ind.carried) continue;
                EvalRecord rec;
                rec.timestamp = now_iso8601();
                rec.eval_id = ind.eval_id.value_or(0);
                rec.generation = gen;
                rec.names = names;
                rec.values = ind.chromosome;
                rec.chromosome_hex = encode(space.clamp(ind.chromosome), space).to_hex();
                rec.fitness = *ind.fitness;
                rec.status = "carried";
                rec.worker_id = "-";
                sink->append_eval(rec);
            }
        }

        const GenerationStats stats = stats_of(pop);
        result.history.push_back(stats);

        for (const auto& ind : pop.individuals) {
            if (!have_best || *ind.fitness > *result.best.fitness) {
                result.best = ind;
                result.best.carried = false;
                have_best = true;
            }
        }

        if (sink != nullptr) {
            GenerationSummary summary;
            summary.generation = gen;
            summary.best_fitness = stats.best_fitness;
            summary.mean_fitness = stats.mean_fitness;
            summary.best_parameters = result.best.chromosome;
            summary.evaluations_so_far = eval_counter;
            sink->write_summary(summary);
        }

        if (cfg.target_fitness && stats.best_fitness >= *cfg.target_fitness) break;
    }

    result.total_evaluations = eval_counter;
    return result;
}

} // namespace gae2e
