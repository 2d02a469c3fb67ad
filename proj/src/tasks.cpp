#include "mfea/tasks.hpp"

#include <stdexcept>

namespace mfea {

std::vector<int> project(std::span<const int> order, int dimension) {
    if (dimension < 1 || dimension > static_cast<int>(order.size())) {
        throw std::invalid_argument("project: task dimension " + std::to_string(dimension) +
                                    " does not fit the unified length " + std::to_string(order.size()));
    }
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(dimension));
    for (int v : order) {
        if (v <= dimension) perm.push_back(v);
    }
    return perm;
}

std::vector<int> project(const UnifiedGenome& genome, int dimension) {
    return project(genome.order(), dimension);
}

double tsp_cost(std::span<const int> perm, const TspInstance& inst) {
    if (perm.empty()) return 0.0;
    long total = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const int from = perm[i];
        const int to = perm[(i + 1) % perm.size()];
        total += euc2d_distance(inst.coords[static_cast<std::size_t>(from - 1)],
                                inst.coords[static_cast<std::size_t>(to - 1)]);
    }
    return static_cast<double>(total);
}

RoutePlan cvrp_decode(std::span<const int> perm, const CvrpInstance& inst) {
    RoutePlan plan;
    auto coord = [&](int customer) { return inst.customer_coords[static_cast<std::size_t>(customer - 1)]; };
    long total = 0;
    int load = 0;
    std::vector<int> route;
    auto close = [&] {
        total += euc2d_distance(coord(route.back()), inst.depot);
        plan.routes.push_back(std::move(route));
        route.clear();
        load = 0;
    };
    for (int c : perm) {
        const int demand = inst.demands[static_cast<std::size_t>(c - 1)];
        if (!route.empty() && load + demand > inst.capacity) {
            close();
        }
        total += route.empty() ? euc2d_distance(inst.depot, coord(c)) : euc2d_distance(coord(route.back()), coord(c));
        route.push_back(c);
        load += demand;
    }
    if (!route.empty()) close();
    plan.total_distance = static_cast<double>(total);
    return plan;
}

double cvrp_cost(std::span<const int> perm, const CvrpInstance& inst) {
    return cvrp_decode(perm, inst).total_distance;
}

Task::Task(TspInstance inst) : instance_(std::move(inst)) {
    const auto& tsp = std::get<TspInstance>(instance_);
    validate(tsp);
    dimension_ = tsp.dimension();
    distances_.resize(dimension_, dimension_);
    for (int i = 0; i < dimension_; ++i) {
        for (int j = 0; j < dimension_; ++j) {
            distances_(i, j) = euc2d_distance(tsp.coords[static_cast<std::size_t>(i)], tsp.coords[static_cast<std::size_t>(j)]);
        }
    }
}

Task::Task(CvrpInstance inst) : instance_(std::move(inst)) {
    const auto& vrp = std::get<CvrpInstance>(instance_);
    validate(vrp);
    dimension_ = vrp.dimension();
    std::vector<Point> nodes{vrp.depot};
    nodes.insert(nodes.end(), vrp.customer_coords.begin(), vrp.customer_coords.end());
    const int n = static_cast<int>(nodes.size());
    distances_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            distances_(i, j) = euc2d_distance(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
        }
    }
}

const std::string& Task::name() const {
    return std::visit([](const auto& inst) -> const std::string& { return inst.name; }, instance_);
}

double Task::evaluate(const UnifiedGenome& genome) const {
    if (dimension_ > genome.d_max()) {
        throw std::invalid_argument("Task '" + name() + "': dimension exceeds genome length");
    }
    return is_cvrp() ? evaluate_cvrp(genome.order()) : evaluate_tsp(genome.order());
}

// The evaluators walk the genome and skip foreign values, which is the same
// as projecting first without allocating.
double Task::evaluate_tsp(std::span<const int> order) const {
    long total = 0;
    int first = -1;
    int prev = -1;
    for (int v : order) {
        if (v > dimension_) continue;
        const int city = v - 1;
        if (prev < 0) {
            first = city;
        } else {
            total += distances_(prev, city);
        }
        prev = city;
    }
    total += distances_(prev, first);
    return static_cast<double>(total);
}

double Task::evaluate_cvrp(std::span<const int> order) const {
    const auto& vrp = std::get<CvrpInstance>(instance_);
    long total = 0;
    int load = 0;
    int prev = 0;  // depot
    for (int v : order) {
        if (v > dimension_) continue;
        const int demand = vrp.demands[static_cast<std::size_t>(v - 1)];
        if (prev != 0 && load + demand > vrp.capacity) {
            total += distances_(prev, 0);
            prev = 0;
            load = 0;
        }
        total += distances_(prev, v);
        load += demand;
        prev = v;
    }
    total += distances_(prev, 0);
    return static_cast<double>(total);
}

}  // namespace mfea
