#include "mfea/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfea {

int Individual::evaluated_count() const {
    return static_cast<int>(std::count_if(factorial_costs.begin(), factorial_costs.end(), is_evaluated));
}

void evaluate_all_tasks(Individual& ind, std::span<const Task> tasks, EvalCounter& budget) {
    if (static_cast<int>(tasks.size()) != ind.k_tasks()) {
        throw std::invalid_argument("evaluate_all_tasks: task count does not match the individual");
    }
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        ind.factorial_costs[k] = tasks[k].evaluate(ind.genome);
    }
    budget.add(static_cast<std::int64_t>(tasks.size()));
}

void evaluate_on_task(Individual& ind, const Task& task, int task_index, EvalCounter& budget) {
    ind.factorial_costs[static_cast<std::size_t>(task_index)] = task.evaluate(ind.genome);
    budget.add(1);
}

void assign_ranks_and_fitness(Population& pop) {
    if (pop.empty()) {
        throw std::invalid_argument("assign_ranks_and_fitness: empty population");
    }
    const std::size_t n = pop.size();
    const int k_tasks = pop.k_tasks;
    std::vector<std::size_t> order(n);
    for (int k = 0; k < k_tasks; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop.members[a].cost(k) < pop.members[b].cost(k);
        });
        for (std::size_t r = 0; r < n; ++r) {
            pop.members[order[r]].factorial_ranks[static_cast<std::size_t>(k)] = static_cast<int>(r + 1);
        }
    }
    for (auto& m : pop.members) {
        int best_rank = 0;
        int skill = -1;
        for (int k = 0; k < k_tasks; ++k) {
            if (!m.evaluated_on(k)) continue;
            const int r = m.factorial_ranks[static_cast<std::size_t>(k)];
            if (skill < 0 || r < best_rank) {
                best_rank = r;
                skill = k;
            }
        }
        if (skill < 0) {
            throw std::invalid_argument("assign_ranks_and_fitness: member without any evaluated task");
        }
        m.skill_factor = skill;
        m.scalar_fitness = 1.0 / best_rank;
    }
}

Population elitist_select(const Population& current, const Population& offspring, std::size_t p_size) {
    Population all{current.members, current.k_tasks};
    all.members.insert(all.members.end(), offspring.members.begin(), offspring.members.end());
    if (all.size() < p_size) {
        throw std::logic_error("elitist_select: union of " + std::to_string(all.size()) +
                               " members cannot fill a population of " + std::to_string(p_size));
    }
    assign_ranks_and_fitness(all);

    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return all.members[a].scalar_fitness > all.members[b].scalar_fitness;
    });
    order.resize(p_size);
    std::sort(order.begin(), order.end());

    Population survivors{{}, current.k_tasks};
    survivors.members.reserve(p_size);
    for (std::size_t i : order) {
        survivors.members.push_back(std::move(all.members[i]));
    }
    assign_ranks_and_fitness(survivors);
    return survivors;
}

std::vector<double> best_costs(const Population& pop) {
    std::vector<double> best(static_cast<std::size_t>(pop.k_tasks), kUnevaluated);
    for (const auto& m : pop.members) {
        for (int k = 0; k < pop.k_tasks; ++k) {
            best[static_cast<std::size_t>(k)] = std::min(best[static_cast<std::size_t>(k)], m.cost(k));
        }
    }
    return best;
}

std::vector<std::string> invariant_violations(const Population& pop) {
    std::vector<std::string> out;
    if (pop.empty()) {
        out.emplace_back("population is empty");
        return out;
    }
    const int d_max = pop.members.front().genome.d_max();
    const std::size_t n = pop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = pop.members[i];
        const std::string who = "member " + std::to_string(i) + ": ";
        if (m.genome.d_max() != d_max || !is_permutation_of_1_to_n(m.genome.order())) {
            out.push_back(who + "genome is not a permutation of 1..d_max");
        }
        if (m.k_tasks() != pop.k_tasks || static_cast<int>(m.factorial_ranks.size()) != pop.k_tasks) {
            out.push_back(who + "wrong number of tasks");
            continue;
        }
        for (double c : m.factorial_costs) {
            if (is_evaluated(c) && !(std::isfinite(c) && c >= 0.0)) {
                out.push_back(who + "cost outside [0, inf)");
            }
        }
        if (m.skill_factor < 0 || m.skill_factor >= pop.k_tasks || !m.evaluated_on(m.skill_factor)) {
            out.push_back(who + "skill factor does not name an evaluated task");
            continue;
        }
        const int r = m.factorial_ranks[static_cast<std::size_t>(m.skill_factor)];
        if (r < 1 || std::abs(m.scalar_fitness * r - 1.0) > 1e-12) {
            out.push_back(who + "scalar fitness is not 1/rank of the skill task");
        }
    }
    for (int k = 0; k < pop.k_tasks; ++k) {
        std::vector<char> seen(n + 1, 0);
        bool ok = true;
        for (const auto& m : pop.members) {
            if (static_cast<int>(m.factorial_ranks.size()) != pop.k_tasks) {
                ok = false;
                break;
            }
            const int r = m.factorial_ranks[static_cast<std::size_t>(k)];
            if (r < 1 || r > static_cast<int>(n) || seen[static_cast<std::size_t>(r)]) {
                ok = false;
                break;
            }
            seen[static_cast<std::size_t>(r)] = 1;
        }
        if (!ok) {
            out.push_back("task " + std::to_string(k) + ": ranks are not a permutation of 1..P");
        }
    }
    return out;
}

}  // namespace mfea
