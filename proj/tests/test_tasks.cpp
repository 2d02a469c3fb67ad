#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>

#include "doctest.h"
#include "mfea/harness.hpp"
#include "mfea/tasks.hpp"

using namespace mfea;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CvrpInstance line_vrp(std::vector<int> demands, int capacity) {
    CvrpInstance inst{"line", {0, 0}, {}, std::move(demands), capacity};
    for (std::size_t i = 0; i < inst.demands.size(); ++i) inst.customer_coords.push_back({double(i + 1), 0});
    return inst;
}

// Reference tour length straight from the coordinates.
double reference_tour(const std::vector<int>& tour, const TspInstance& inst) {
    double total = 0;
    for (std::size_t i = 0; i < tour.size(); ++i) {
        const auto& a = inst.coords[tour[i] - 1];
        const auto& b = inst.coords[tour[(i + 1) % tour.size()] - 1];
        total += euc2d_distance(a, b);
    }
    return total;
}

}  // namespace

TEST_CASE("project keeps the task's values in genome order") {
    const UnifiedGenome g({3, 1, 4, 2});
    CHECK(project(g, 4) == std::vector<int>{3, 1, 4, 2});
    CHECK(project(g, 2) == std::vector<int>{1, 2});
    CHECK_THROWS_AS(project(g, 5), std::invalid_argument);

    Rng rng(3);
    const auto big = UnifiedGenome::random(76, rng);
    auto p = project(big, 52);
    REQUIRE(p.size() == 52);
    std::sort(p.begin(), p.end());
    std::vector<int> expected(52);
    std::iota(expected.begin(), expected.end(), 1);
    CHECK(p == expected);
}

TEST_CASE("tsp_cost") {
    TspInstance square{"sq", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(tsp_cost(std::vector<int>{1, 2, 3, 4}, square) == 4.0);
    CHECK(tsp_cost(std::vector<int>{4, 3, 2, 1}, square) == 4.0);

    TspInstance line{"line", {{0, 0}, {1, 0}, {2, 0}}};
    CHECK(tsp_cost(std::vector<int>{1, 2, 3}, line) == 4.0);
}

TEST_CASE("berlin52 optimal tour is 7542") {
    const auto inst = parse_tsplib(read_problem_file(default_data_dir() + "/berlin52.tsp").text);
    const auto tour = parse_tour(slurp(default_data_dir() + "/berlin52.opt.tour"));
    CHECK(reference_tour(tour, inst) == 7542.0);
    CHECK(tsp_cost(tour, inst) == 7542.0);
    std::vector<int> reversed(tour.rbegin(), tour.rend());
    CHECK(tsp_cost(reversed, inst) == 7542.0);
}

TEST_CASE("cvrp_decode: greedy split") {
    SUBCASE("hand-traced split") {
        const auto inst = line_vrp({4, 3, 3, 2}, 6);
        const auto plan = cvrp_decode(std::vector<int>{1, 2, 3, 4}, inst);
        CHECK(plan.routes == std::vector<std::vector<int>>{{1}, {2, 3}, {4}});
        // 1+1, 2+1+3, 4+4
        CHECK(plan.total_distance == 16.0);
    }
    SUBCASE("no split when capacity covers everything") {
        const auto inst = line_vrp({1, 2, 3}, 6);
        const auto plan = cvrp_decode(std::vector<int>{3, 1, 2}, inst);
        CHECK(plan.routes == std::vector<std::vector<int>>{{3, 1, 2}});
    }
    SUBCASE("one customer per route when each fills the vehicle") {
        const auto inst = line_vrp({5, 5, 5}, 5);
        const auto plan = cvrp_decode(std::vector<int>{2, 3, 1}, inst);
        CHECK(plan.routes == std::vector<std::vector<int>>{{2}, {3}, {1}});
    }
}

TEST_CASE("cvrp_cost") {
    CvrpInstance single{"one", {0, 0}, {{3, 4}}, {1}, 10};
    CHECK(cvrp_cost(std::vector<int>{1}, single) == 10.0);

    CvrpInstance two{"two", {0, 0}, {{1, 0}, {0, 1}}, {1, 1}, 1};
    CHECK(cvrp_cost(std::vector<int>{1, 2}, two) == 4.0);
}

TEST_CASE("Task evaluates projected genomes") {
    TspInstance square{"sq", {{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
    const Task t(square);
    CHECK(t.dimension() == 4);
    CHECK_FALSE(t.is_cvrp());
    CHECK(t.evaluate(UnifiedGenome({1, 5, 2, 6, 3, 4})) == 40.0);
    CHECK(t.evaluate(UnifiedGenome({1, 3, 2, 4})) == 48.0);

    const Task v(line_vrp({4, 3, 3, 2}, 6));
    CHECK(v.is_cvrp());
    CHECK(v.dimension() == 4);
    CHECK(v.evaluate(UnifiedGenome({1, 5, 2, 3, 4})) == 16.0);
}

TEST_CASE("CVRP costs never beat the known optimum") {
    Rng rng(17);
    for (const char* name : {"P-n50-k7", "P-n50-k8", "P-n55-k7"}) {
        const Task t(parse_vrp(read_problem_file(default_data_dir() + "/" + name + ".vrp").text));
        const double opt = *known_optimum(name);
        for (int i = 0; i < 200; ++i) {
            const auto g = UnifiedGenome::random(t.dimension(), rng);
            REQUIRE(t.evaluate(g) >= opt);
            REQUIRE(t.evaluate(g) == cvrp_cost(project(g, t.dimension()), std::get<CvrpInstance>(t.instance())));
        }
    }
}

TEST_CASE("Task::evaluate agrees with tsp_cost on berlin52") {
    const Task t(parse_tsplib(read_problem_file(default_data_dir() + "/berlin52.tsp").text));
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto g = UnifiedGenome::random(76, rng);
        const auto perm = project(g, 52);
        REQUIRE(t.evaluate(g) == tsp_cost(perm, std::get<TspInstance>(t.instance())));
        REQUIRE(t.evaluate(g) >= 7542.0);
    }
}
