#ifndef MFEA_ENGINE_HPP
#define MFEA_ENGINE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfea/individual.hpp"
#include "mfea/random.hpp"
#include "mfea/rmp.hpp"
#include "mfea/tasks.hpp"

namespace mfea {

enum class EngineKind { Mfea, Dmfea2 };

std::string engine_name(EngineKind kind);
/// Accepts "mfea" and "dmfea2" (also "dmfea-ii"); throws std::invalid_argument.
EngineKind parse_engine_kind(const std::string& name);

/// Defaults are the published parameter set; w is not published and
/// defaults to 0.5.
struct EngineConfig {
    std::size_t population_size = 200;
    std::int64_t eval_budget = 600000;
    double rmp_scalar = 0.9;  // MFEA only
    double rmp_init = 0.95;   // dMFEA-II only
    double rmp_floor = 0.1;
    double p_m = 0.2;
    double w = 0.5;
    double delta_inc = 0.99;
    double delta_dec = 0.99;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument unless P is even and positive, the
    /// budget covers the initial P * K evaluations and every probability is
    /// in range.
    void validate(int k_tasks) const;
};

struct GenerationRecord {
    int generation = 0;
    std::int64_t evaluations = 0;
    std::vector<double> best_costs;
    std::optional<Eigen::MatrixXd> rmp;  // dMFEA-II only, after the generation

    // Counters for the pairs bred in this generation.
    int mixed_pairs = 0;             // parents with different skill factors
    int inter_task_crossovers = 0;   // mixed pairs that exchanged material
    int positive_transfers = 0;
    int negative_transfers = 0;
    int mate_fallbacks = 0;          // no same-skill mate: parent mutated instead
    int missing_parent_costs = 0;    // comparison parent lacked a cost
};

struct RunTrace {
    std::vector<GenerationRecord> records;
};

struct RunResult {
    std::vector<double> best_costs;
    std::vector<UnifiedGenome> best_genomes;
    std::int64_t evaluations = 0;
    RunTrace trace;
};

/// Called once per generation just before survival, with the parents, the
/// freshly evaluated offspring and (dMFEA-II) the current RMP matrix.
using GenerationObserver =
    std::function<void(int generation, const Population& parents, const Population& offspring, const RmpMatrix* rmp)>;

/// True iff the child's cost on its (inherited) skill task is strictly lower
/// than the parent's cost on that task. A parent without a cost there counts
/// as positive.
bool transfer_outcome(const Individual& child, const Individual& parent);

/// Baseline discrete MFEA: OX for same-skill pairs, OX with probability
/// rmp_scalar for mixed pairs, otherwise 2-opt of each parent.
RunResult run_mfea(std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                   const GenerationObserver& observer = {});

/// dMFEA-II: the mixed-pair branch uses the learned RMP matrix, dynamic OX
/// and P_m-gated 2-opt; same-skill pairs use OX plus P_m-gated 2-opt.
RunResult run_dmfea2(std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                     const GenerationObserver& observer = {});

RunResult run_engine(EngineKind kind, std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                     const GenerationObserver& observer = {});

/// Largest task dimension, i.e. the unified genome length.
int unified_dimension(std::span<const Task> tasks);

}  // namespace mfea

#endif
