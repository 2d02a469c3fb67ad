#ifndef MFEA_INDIVIDUAL_HPP
#define MFEA_INDIVIDUAL_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "mfea/genome.hpp"

namespace mfea {

/// Factorial cost of a task the individual was never evaluated on.
/// Ranks it behind every evaluated member of that task.
inline constexpr double kUnevaluated = std::numeric_limits<double>::infinity();

inline bool is_evaluated(double cost) { return cost != kUnevaluated; }

struct Individual {
    UnifiedGenome genome;
    std::vector<double> factorial_costs;  // one per task, kUnevaluated if unknown
    std::vector<int> factorial_ranks;     // 1-based, 0 while unset
    double scalar_fitness = 0.0;
    int skill_factor = -1;

    Individual() = default;
    Individual(UnifiedGenome g, int k_tasks)
        : genome(std::move(g)),
          factorial_costs(static_cast<std::size_t>(k_tasks), kUnevaluated),
          factorial_ranks(static_cast<std::size_t>(k_tasks), 0) {}

    int k_tasks() const { return static_cast<int>(factorial_costs.size()); }
    double cost(int task) const { return factorial_costs[static_cast<std::size_t>(task)]; }
    bool evaluated_on(int task) const { return is_evaluated(cost(task)); }
    int evaluated_count() const;
};

struct Population {
    std::vector<Individual> members;
    int k_tasks = 0;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

/// Objective-function evaluations spent so far in one run.
class EvalCounter {
public:
    void add(std::int64_t n) { count_ += n; }
    std::int64_t value() const { return count_; }

private:
    std::int64_t count_ = 0;
};

}  // namespace mfea

#endif
