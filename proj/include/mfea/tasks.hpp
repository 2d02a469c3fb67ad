#ifndef MFEA_TASKS_HPP
#define MFEA_TASKS_HPP

#include <Eigen/Core>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mfea/genome.hpp"
#include "mfea/instance.hpp"

namespace mfea {

/// Values of `genome` that lie in {1..dimension}, in genome order.
/// Throws std::invalid_argument if dimension > genome.d_max().
std::vector<int> project(const UnifiedGenome& genome, int dimension);
std::vector<int> project(std::span<const int> order, int dimension);

/// Closed-tour length of `perm` (a permutation of 1..dimension) under EUC_2D,
/// including the return edge.
double tsp_cost(std::span<const int> perm, const TspInstance& inst);

struct RoutePlan {
    std::vector<std::vector<int>> routes;
    double total_distance = 0.0;
};

/// Splits `perm` left to right into capacity-feasible routes: a route is
/// closed as soon as the next customer would overflow it.
RoutePlan cvrp_decode(std::span<const int> perm, const CvrpInstance& inst);
double cvrp_cost(std::span<const int> perm, const CvrpInstance& inst);

/// One optimization task of a multitasking environment.
///
/// Holds the instance and its rounded EUC_2D distance matrix. For CVRP the
/// matrix is indexed with the depot at 0 and customer i at i.
class Task {
public:
    explicit Task(TspInstance inst);
    explicit Task(CvrpInstance inst);

    const std::string& name() const;
    int dimension() const { return dimension_; }
    bool is_cvrp() const { return std::holds_alternative<CvrpInstance>(instance_); }
    const std::variant<TspInstance, CvrpInstance>& instance() const { return instance_; }

    /// Factorial cost of a unified genome on this task: the genome is
    /// projected to {1..dimension()} and the task objective applied.
    double evaluate(const UnifiedGenome& genome) const;

private:
    double evaluate_tsp(std::span<const int> order) const;
    double evaluate_cvrp(std::span<const int> order) const;

    std::variant<TspInstance, CvrpInstance> instance_;
    int dimension_ = 0;
    Eigen::MatrixXi distances_;
};

}  // namespace mfea

#endif
