#ifndef MFEA_FITNESS_HPP
#define MFEA_FITNESS_HPP

#include <span>
#include <string>
#include <vector>

#include "mfea/individual.hpp"
#include "mfea/tasks.hpp"

namespace mfea {

/// Evaluates `ind` on every task (tasks.size() evaluations).
void evaluate_all_tasks(Individual& ind, std::span<const Task> tasks, EvalCounter& budget);

/// Selective evaluation: one evaluation, on task `task` only.
void evaluate_on_task(Individual& ind, const Task& task, int task_index, EvalCounter& budget);

/// Recomputes factorial ranks, scalar fitness and skill factor of every
/// member.
///
/// Per task, members are sorted by (cost, population index) and ranked
/// 1..P, unevaluated members last. Scalar fitness and skill factor are taken
/// over the tasks a member was actually evaluated on, so a member is never
/// assigned a skill on a task it has no cost for; ties in the skill factor go
/// to the lowest task index. Throws std::invalid_argument on an empty
/// population or a member without any evaluated task.
void assign_ranks_and_fitness(Population& pop);

/// Survival step: ranks the union current + offspring, keeps the p_size
/// members of highest scalar fitness (ties to the lower union index, current
/// before offspring), preserves their union order and re-ranks them.
/// Throws std::logic_error if the union holds fewer than p_size members.
Population elitist_select(const Population& current, const Population& offspring, std::size_t p_size);

/// Best cost per task over the members evaluated on it.
std::vector<double> best_costs(const Population& pop);

/// Human-readable list of broken population invariants (permutation
/// validity, rank bijectivity, fitness/skill coherence, cost domain).
/// Empty when the population is sound.
std::vector<std::string> invariant_violations(const Population& pop);

}  // namespace mfea

#endif
