#include "mfea/engine.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mfea/fitness.hpp"
#include "mfea/operators.hpp"

namespace mfea {

std::string engine_name(EngineKind kind) {
    return kind == EngineKind::Mfea ? "mfea" : "dmfea2";
}

EngineKind parse_engine_kind(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "mfea") return EngineKind::Mfea;
    if (lower == "dmfea2" || lower == "dmfea-ii" || lower == "dmfeaii") return EngineKind::Dmfea2;
    throw std::invalid_argument("unknown engine '" + name + "' (expected mfea or dmfea2)");
}

void EngineConfig::validate(int k_tasks) const {
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (k_tasks < 1) {
        throw std::invalid_argument("engine: need at least one task");
    }
    if (population_size < 2 || population_size % 2 != 0) {
        throw std::invalid_argument("engine: population size must be even and at least 2");
    }
    if (eval_budget < static_cast<std::int64_t>(population_size) * k_tasks) {
        throw std::invalid_argument("engine: budget of " + std::to_string(eval_budget) +
                                    " evaluations does not cover the initial population (" +
                                    std::to_string(population_size * static_cast<std::size_t>(k_tasks)) + ")");
    }
    if (!probability(rmp_scalar) || !probability(rmp_init) || !probability(p_m) || !probability(rmp_floor)) {
        throw std::invalid_argument("engine: probabilities must lie in [0, 1]");
    }
    if (!(w > 0.0 && w <= 1.0)) {
        throw std::invalid_argument("engine: w must lie in (0, 1]");
    }
}

bool transfer_outcome(const Individual& child, const Individual& parent) {
    const int task = child.skill_factor;
    if (!parent.evaluated_on(task)) return true;
    return child.cost(task) < parent.cost(task);
}

int unified_dimension(std::span<const Task> tasks) {
    int d = 0;
    for (const auto& t : tasks) d = std::max(d, t.dimension());
    return d;
}

namespace {

class GenerationalLoop {
public:
    GenerationalLoop(EngineKind kind, std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                     const GenerationObserver& observer)
        : kind_(kind),
          tasks_(tasks),
          config_(config),
          rng_(rng),
          observer_(observer),
          k_(static_cast<int>(tasks.size())),
          d_max_(unified_dimension(tasks)) {
        config_.validate(k_);
        if (d_max_ < 2) {
            throw std::invalid_argument("engine: unified dimension must be at least 2");
        }
        if (kind_ == EngineKind::Dmfea2) {
            rmp_.emplace(k_, config_.rmp_init, config_.delta_inc, config_.delta_dec, config_.rmp_floor);
        }
    }

    RunResult run() {
        initialize();
        int generation = 0;
        while (evals_.value() < config_.eval_budget) {
            ++generation;
            record_ = GenerationRecord{};
            record_.generation = generation;
            Population offspring = breed();
            if (observer_) observer_(generation, pop_, offspring, rmp_ ? &*rmp_ : nullptr);
            pop_ = elitist_select(pop_, offspring, config_.population_size);
            push_record();
        }
        return finish();
    }

private:
    void initialize() {
        pop_ = Population{{}, k_};
        pop_.members.reserve(config_.population_size);
        for (std::size_t i = 0; i < config_.population_size; ++i) {
            Individual ind(UnifiedGenome::random(d_max_, rng_), k_);
            evaluate_all_tasks(ind, tasks_, evals_);
            pop_.members.push_back(std::move(ind));
        }
        assign_ranks_and_fitness(pop_);
        record_ = GenerationRecord{};
        push_record();
    }

    void push_record() {
        record_.evaluations = evals_.value();
        record_.best_costs = best_costs(pop_);
        if (rmp_) record_.rmp = rmp_->entries();
        trace_.records.push_back(std::move(record_));
        record_ = GenerationRecord{};
    }

    Population breed() {
        const std::size_t p = pop_.size();
        skill_members_.assign(static_cast<std::size_t>(k_), {});
        for (std::size_t i = 0; i < p; ++i) {
            skill_members_[static_cast<std::size_t>(pop_.members[i].skill_factor)].push_back(i);
        }
        std::vector<std::size_t> order(p);
        for (std::size_t i = 0; i < p; ++i) order[i] = i;
        rng_.shuffle(std::span<std::size_t>(order));

        Population offspring{{}, k_};
        offspring.members.reserve(p);
        for (std::size_t pair = 0; pair + 1 < p; pair += 2) {
            if (evals_.value() >= config_.eval_budget) break;
            breed_pair(order[pair], order[pair + 1], offspring);
        }
        return offspring;
    }

    void breed_pair(std::size_t ia, std::size_t ib, Population& offspring) {
        const Individual& a = pop_.members[ia];
        const Individual& b = pop_.members[ib];
        const int ta = a.skill_factor;
        const int tb = b.skill_factor;

        if (ta == tb) {
            auto [ga, gb] = order_crossover(a.genome, b.genome, random_cut_window(static_cast<std::size_t>(d_max_), rng_));
            if (kind_ == EngineKind::Dmfea2) {
                ga = maybe_mutate(std::move(ga), true);
                gb = maybe_mutate(std::move(gb), true);
            }
            add_child(std::move(ga), ta, offspring);
            add_child(std::move(gb), ta, offspring);
            return;
        }

        ++record_.mixed_pairs;
        if (kind_ == EngineKind::Mfea) {
            if (rng_.uniform() <= config_.rmp_scalar) {
                ++record_.inter_task_crossovers;
                auto [ga, gb] =
                    order_crossover(a.genome, b.genome, random_cut_window(static_cast<std::size_t>(d_max_), rng_));
                const int sa = rng_.coin() ? ta : tb;
                const int sb = rng_.coin() ? ta : tb;
                add_child(std::move(ga), sa, offspring);
                add_child(std::move(gb), sb, offspring);
            } else {
                add_child(two_opt(a.genome, rng_), ta, offspring);
                add_child(two_opt(b.genome, rng_), tb, offspring);
            }
            return;
        }

        const double entry = (*rmp_)(ta, tb);
        if (rng_.uniform() <= entry) {
            ++record_.inter_task_crossovers;
            UnifiedGenome ga = dynamic_ox(a.genome, b.genome, entry, config_.w, tasks_[ta].dimension(), rng_);
            UnifiedGenome gb = dynamic_ox(b.genome, a.genome, entry, config_.w, tasks_[tb].dimension(), rng_);
            ga = maybe_mutate(std::move(ga), false);
            gb = maybe_mutate(std::move(gb), false);
            const int sa = rng_.coin() ? ta : tb;
            const int sb = rng_.coin() ? ta : tb;
            const Individual& child_a = add_child(std::move(ga), sa, offspring);
            learn(ta, tb, child_a, sa == ta ? pop_.members[ia] : pop_.members[ib]);
            const Individual& child_b = add_child(std::move(gb), sb, offspring);
            learn(ta, tb, child_b, sb == ta ? pop_.members[ia] : pop_.members[ib]);
        } else {
            intra_task_child(ia, offspring);
            intra_task_child(ib, offspring);
        }
    }

    // Parent-centric crossover with a random mate of the same skill; the
    // window is sized by the diagonal RMP entry of that skill.
    void intra_task_child(std::size_t parent_index, Population& offspring) {
        const Individual& parent = pop_.members[parent_index];
        const int task = parent.skill_factor;
        const auto& mates = skill_members_[static_cast<std::size_t>(task)];
        UnifiedGenome genome;
        if (mates.size() < 2) {
            ++record_.mate_fallbacks;
            genome = two_opt(parent.genome, rng_);
        } else {
            std::size_t pick = rng_.index(mates.size() - 1);
            std::size_t mate = mates[pick];
            if (mate == parent_index) mate = mates.back();
            genome = dynamic_ox(parent.genome, pop_.members[mate].genome, (*rmp_)(task, task), config_.w,
                                tasks_[task].dimension(), rng_);
            genome = maybe_mutate(std::move(genome), true);
        }
        const Individual& child = add_child(std::move(genome), task, offspring);
        learn(task, task, child, pop_.members[parent_index]);
    }

    // Inter-task children mutate when rand2 < P_m, intra-task ones when
    // rand2 <= P_m; each child draws its own rand2.
    UnifiedGenome maybe_mutate(UnifiedGenome g, bool inclusive) {
        const double r = rng_.uniform();
        const bool mutate = inclusive ? r <= config_.p_m : r < config_.p_m;
        return mutate ? two_opt(g, rng_) : g;
    }

    const Individual& add_child(UnifiedGenome genome, int skill, Population& offspring) {
        Individual child(std::move(genome), k_);
        child.skill_factor = skill;
        evaluate_on_task(child, tasks_[static_cast<std::size_t>(skill)], skill, evals_);
        offspring.members.push_back(std::move(child));
        return offspring.members.back();
    }

    void learn(int i, int j, const Individual& child, const Individual& parent) {
        if (!parent.evaluated_on(child.skill_factor)) ++record_.missing_parent_costs;
        const bool positive = transfer_outcome(child, parent);
        (positive ? record_.positive_transfers : record_.negative_transfers)++;
        rmp_->update(i, j, positive);
    }

    RunResult finish() {
        RunResult result;
        result.best_costs.assign(static_cast<std::size_t>(k_), kUnevaluated);
        result.best_genomes.resize(static_cast<std::size_t>(k_));
        for (const auto& m : pop_.members) {
            for (int k = 0; k < k_; ++k) {
                if (m.cost(k) < result.best_costs[static_cast<std::size_t>(k)]) {
                    result.best_costs[static_cast<std::size_t>(k)] = m.cost(k);
                    result.best_genomes[static_cast<std::size_t>(k)] = m.genome;
                }
            }
        }
        result.evaluations = evals_.value();
        result.trace = std::move(trace_);
        return result;
    }

    EngineKind kind_;
    std::span<const Task> tasks_;
    EngineConfig config_;
    Rng& rng_;
    const GenerationObserver& observer_;
    int k_;
    int d_max_;

    Population pop_;
    EvalCounter evals_;
    std::optional<RmpMatrix> rmp_;
    std::vector<std::vector<std::size_t>> skill_members_;
    RunTrace trace_;
    GenerationRecord record_;
};

}  // namespace

RunResult run_engine(EngineKind kind, std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                     const GenerationObserver& observer) {
    return GenerationalLoop(kind, tasks, config, rng, observer).run();
}

RunResult run_mfea(std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                   const GenerationObserver& observer) {
    return run_engine(EngineKind::Mfea, tasks, config, rng, observer);
}

RunResult run_dmfea2(std::span<const Task> tasks, const EngineConfig& config, Rng& rng,
                     const GenerationObserver& observer) {
    return run_engine(EngineKind::Dmfea2, tasks, config, rng, observer);
}

}  // namespace mfea
