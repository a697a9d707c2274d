#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gae2e/eval.hpp"
#include "gae2e/param_space.hpp"
#include "gae2e/rng.hpp"
#include "gae2e/runlog.hpp"

namespace gae2e {

struct Individual {
    ParamVector chromosome;
    std::optional<double> fitness; // AUC-based, in [0, 1]
    std::optional<std::uint64_t> eval_id;
    bool carried = false; // copied into this generation by elitism
};

struct Population {
    std::vector<Individual> individuals;
    int generation = 0;

    std::size_t size() const { return individuals.size(); }
};

struct GAConfig {
    int population_size = 70;
    int generations = 70;
    double crossover_prob = 0.9;
    std::optional<double> mutation_prob; // default: 1 / dimension
    double eta_c = 20.0; // SBX distribution index
    double eta_m = 20.0; // polynomial mutation index
    std::uint64_t seed = 1;
    int elitism = 1;
    std::optional<double> target_fitness; // stop once the best reaches this

    void validate() const;
    double effective_mutation_prob(const ParamSpace& space) const;
};

struct GenerationStats {
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
};

struct SearchResult {
    Individual best;
    std::vector<GenerationStats> history; // one entry per generation run
    std::uint64_t total_evaluations = 0;
};

/// Named substreams of the run seed. Evolution draws nothing from any other
/// source, so logging or evaluation order cannot perturb the search path.
struct GaRngs {
    Rng init;
    Rng selection;
    Rng crossover;
    Rng mutation;

    static GaRngs from_seed(std::uint64_t seed) {
        return GaRngs{Rng(derive_seed(seed, "init")), Rng(derive_seed(seed, "selection")),
                      Rng(derive_seed(seed, "crossover")),
                      Rng(derive_seed(seed, "mutation"))};
    }
};

/// Seed of the evaluator stream for one evaluation id; precomputed by the
/// dispatching side so results cannot depend on which worker runs the task.
inline std::uint64_t eval_seed(std::uint64_t run_seed, std::uint64_t eval_id) {
    return derive_seed(run_seed, "eval", eval_id);
}

// --- operator kernels (pure math, exposed for property tests) ---

/// SBX children of two parent coordinates for a spread draw u in [0, 1).
/// Preserves the parent mean exactly (pre-clamp).
std::pair<double, double> sbx_pair(double p1, double p2, double u, double eta_c);

/// Polynomial mutation of one coordinate within [lower, upper] for a draw
/// u in [0, 1). u = 0.5 returns p bit-identically; u = 0 maps to lower;
/// u -> 1 approaches upper.
double polynomial_mutate_value(double p, double lower, double upper, double u,
                               double eta_m);

// --- population operators ---

/// n individuals sampled coordinate-wise uniformly within bounds.
/// Throws PopulationTooSmallError when n < 2.
Population initialize_population(const ParamSpace& space, int n, Rng& rng);

/// Two index draws (uniform, with replacement); the strictly fitter of the
/// two wins, ties go to the first draw. Throws UnevaluatedIndividualError
/// when any individual lacks fitness.
const Individual& binary_tournament_select(const Population& pop, Rng& rng);

/// Whole-pair SBX gated by crossover_prob; per-coordinate spread draws;
/// children clamped to bounds. No-op returns copies of the parents.
std::pair<ParamVector, ParamVector> sbx_crossover(const ParamVector& p1,
                                                  const ParamVector& p2,
                                                  const GAConfig& cfg,
                                                  const ParamSpace& space, Rng& rng);

/// Per-coordinate mutation gated by the mutation probability; result always
/// within bounds.
ParamVector polynomial_mutation(const ParamVector& p, const GAConfig& cfg,
                                const ParamSpace& space, Rng& rng);

/// Elitist generational replacement: the top `elitism` individuals carry
/// over unchanged, the rest come from select/select/crossover/mutate.
/// Offspring fitness is unset; the generation index advances by one.
Population evolve_generation(const Population& pop, const GAConfig& cfg,
                             const ParamSpace& space, GaRngs& rngs);

/// The full search loop: initialize, evaluate through `executor`
/// generation by generation (failures already reduced to penalty results),
/// evolve, log every evaluation and per-generation summary through `sink`.
/// Deterministic given cfg.seed and a deterministic evaluator.
SearchResult run_ga(const ParamSpace& space, const GAConfig& cfg,
                    const EvaluatorSpec& evaluator_spec, Executor& executor,
                    RunSink* sink = nullptr);

} // namespace gae2e
