#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "mfea/engine.hpp"
#include "mfea/fitness.hpp"
#include "mfea/harness.hpp"
#include "mfea/trace.hpp"

using namespace mfea;

namespace {

Task random_tsp(const std::string& name, int n, std::uint64_t seed) {
    Rng rng(seed);
    TspInstance inst{name, {}};
    for (int i = 0; i < n; ++i) inst.coords.push_back({double(rng.index(1000)), double(rng.index(1000))});
    return Task(inst);
}

Task random_vrp(const std::string& name, int n, std::uint64_t seed) {
    Rng rng(seed);
    CvrpInstance inst{name, {500, 500}, {}, {}, 40};
    for (int i = 0; i < n; ++i) {
        inst.customer_coords.push_back({double(rng.index(1000)), double(rng.index(1000))});
        inst.demands.push_back(1 + static_cast<int>(rng.index(20)));
    }
    return Task(inst);
}

EngineConfig small_config(std::int64_t budget) {
    EngineConfig c;
    c.population_size = 40;
    c.eval_budget = budget;
    return c;
}

struct Checker {
    int generations = 0;
    std::vector<std::string> problems;

    GenerationObserver observer() {
        return [this](int, const Population& parents, const Population& offspring, const RmpMatrix* rmp) {
            ++generations;
            for (auto& v : invariant_violations(parents)) problems.push_back("parents: " + v);
            for (const auto& child : offspring.members) {
                if (!is_permutation_of_1_to_n(child.genome.order())) problems.push_back("offspring genome invalid");
                if (child.evaluated_count() != 1) problems.push_back("offspring with != 1 cost");
                if (!child.evaluated_on(child.skill_factor)) problems.push_back("offspring cost off its skill");
            }
            if (rmp && !rmp->is_valid()) problems.push_back("rmp out of range or asymmetric");
        };
    }
};

}  // namespace

TEST_CASE("engine names") {
    CHECK(parse_engine_kind("mfea") == EngineKind::Mfea);
    CHECK(parse_engine_kind("dmfea2") == EngineKind::Dmfea2);
    CHECK(parse_engine_kind("dMFEA-II") == EngineKind::Dmfea2);
    CHECK(engine_name(EngineKind::Dmfea2) == "dmfea2");
    CHECK_THROWS_AS(parse_engine_kind("ga"), std::invalid_argument);
}

TEST_CASE("config validation") {
    EngineConfig c = small_config(1000);
    CHECK_NOTHROW(c.validate(3));
    c.population_size = 41;
    CHECK_THROWS_AS(c.validate(3), std::invalid_argument);
    c = small_config(100);
    CHECK_THROWS_AS(c.validate(3), std::invalid_argument);  // 40 * 3 > 100
    c = small_config(1000);
    c.p_m = 1.5;
    CHECK_THROWS_AS(c.validate(3), std::invalid_argument);
}

TEST_CASE("transfer_outcome") {
    Individual parent(UnifiedGenome::identity(3), 2);
    Individual child(UnifiedGenome::identity(3), 2);
    child.skill_factor = 0;
    parent.factorial_costs = {8100, kUnevaluated};
    child.factorial_costs = {7900, kUnevaluated};
    CHECK(transfer_outcome(child, parent));
    child.factorial_costs[0] = 8100;
    CHECK_FALSE(transfer_outcome(child, parent));
    child.factorial_costs[0] = 8200;
    CHECK_FALSE(transfer_outcome(child, parent));
    child.skill_factor = 1;
    child.factorial_costs = {kUnevaluated, 5};
    CHECK(transfer_outcome(child, parent));
}

TEST_CASE("both engines keep every invariant") {
    const std::vector<Task> tasks{random_tsp("a", 12, 1), random_vrp("b", 9, 2), random_tsp("c", 7, 3)};
    for (auto kind : {EngineKind::Mfea, EngineKind::Dmfea2}) {
        CAPTURE(engine_name(kind));
        Checker checker;
        Rng rng(5);
        const auto config = small_config(3000);
        const auto result = run_engine(kind, tasks, config, rng, checker.observer());
        CHECK(checker.problems.empty());
        CHECK(checker.generations > 0);
        CHECK(result.evaluations >= config.eval_budget);
        CHECK(result.evaluations <= config.eval_budget + 1);
        REQUIRE(result.best_costs.size() == 3);

        const auto& recs = result.trace.records;
        REQUIRE(recs.size() == static_cast<std::size_t>(checker.generations) + 1);
        CHECK(recs.front().generation == 0);
        CHECK(recs.front().evaluations == 120);
        for (std::size_t g = 1; g < recs.size(); ++g) {
            for (std::size_t k = 0; k < 3; ++k) REQUIRE(recs[g].best_costs[k] <= recs[g - 1].best_costs[k]);
            REQUIRE(recs[g].evaluations > recs[g - 1].evaluations);
            CHECK(recs[g].rmp.has_value() == (kind == EngineKind::Dmfea2));
        }
        CHECK(recs.back().best_costs == result.best_costs);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(tasks[k].evaluate(result.best_genomes[k]) == result.best_costs[k]);
        }
    }
}

TEST_CASE("same seed, same run") {
    const std::vector<Task> tasks{random_tsp("a", 15, 1), random_tsp("b", 10, 2)};
    for (auto kind : {EngineKind::Mfea, EngineKind::Dmfea2}) {
        Rng r1(77), r2(77), r3(78);
        const auto a = run_engine(kind, tasks, small_config(2000), r1);
        const auto b = run_engine(kind, tasks, small_config(2000), r2);
        const auto c = run_engine(kind, tasks, small_config(2000), r3);
        std::ostringstream sa, sb, sc;
        write_trace(sa, a.trace);
        write_trace(sb, b.trace);
        write_trace(sc, c.trace);
        CHECK(sa.str() == sb.str());
        CHECK(sa.str() != sc.str());
    }
}

TEST_CASE("single task degenerates to a GA") {
    const std::vector<Task> tasks{random_tsp("solo", 20, 9)};
    for (auto kind : {EngineKind::Mfea, EngineKind::Dmfea2}) {
        Rng rng(3);
        Checker checker;
        const auto result = run_engine(kind, tasks, small_config(4000), rng, checker.observer());
        CHECK(checker.problems.empty());
        const auto& recs = result.trace.records;
        CHECK(recs.back().best_costs[0] < recs.front().best_costs[0]);
        for (const auto& r : recs) CHECK(r.mixed_pairs == 0);
    }
}

TEST_CASE("RMP pinned at the floor: inter-task rate is about 10%") {
    const std::vector<Task> tasks{random_tsp("a", 15, 1), random_tsp("b", 12, 2), random_tsp("c", 10, 3)};
    EngineConfig c = small_config(60000);
    c.rmp_init = 0.1;
    c.delta_inc = 1.0;
    c.delta_dec = 1.0;
    Rng rng(12);
    const auto result = run_dmfea2(tasks, c, rng);
    long mixed = 0, inter = 0;
    for (const auto& r : result.trace.records) {
        mixed += r.mixed_pairs;
        inter += r.inter_task_crossovers;
        if (r.rmp) REQUIRE((r.rmp->array() == 0.1).all());
    }
    REQUIRE(mixed > 1000);
    const double rate = double(inter) / double(mixed);
    const double sigma = std::sqrt(0.1 * 0.9 / double(mixed));
    CAPTURE(mixed);
    CAPTURE(rate);
    CHECK(std::abs(rate - 0.1) < 4 * sigma);
}

TEST_CASE("two copies of one task converge alike") {
    const Task t = random_tsp("twin", 25, 4);
    const std::vector<Task> tasks{t, t};
    std::vector<double> gap;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(99, s));
        const auto result = run_dmfea2(tasks, small_config(6000), rng);
        gap.push_back(result.best_costs[0] - result.best_costs[1]);
    }
    const double mean = std::accumulate(gap.begin(), gap.end(), 0.0) / seeds;
    double ss = 0;
    for (double g : gap) ss += (g - mean) * (g - mean);
    const double se = std::sqrt(ss / (seeds - 1) / seeds);
    CAPTURE(mean);
    CAPTURE(se);
    CHECK(std::abs(mean) <= 3 * se + 1e-9);
}

TEST_CASE("identical tasks keep a higher RMP than unrelated ones") {
    // Strict improvement over an elite parent is rarer than not, so every
    // entry drifts down; the twin pair must drift down more slowly.
    const Task t = random_tsp("twin", 30, 4);
    const std::vector<Task> tasks{t, t, random_vrp("other", 28, 8)};
    for (int s = 0; s < 6; ++s) {
        Rng rng(derive_seed(7, s));
        const auto result = run_dmfea2(tasks, small_config(12000), rng);
        const auto& recs = result.trace.records;
        REQUIRE(recs.size() > 15);
        double twin = 0, unrelated = 0;
        for (std::size_t g = 1; g <= 15; ++g) {
            twin += (*recs[g].rmp)(0, 1);
            unrelated += ((*recs[g].rmp)(0, 2) + (*recs[g].rmp)(1, 2)) / 2;
        }
        CAPTURE(s);
        CHECK(twin > unrelated);
    }
}

TEST_CASE("trace lines round trip") {
    GenerationRecord r;
    r.generation = 7;
    r.evaluations = 1234;
    r.best_costs = {1.5, 2, 3};
    r.mixed_pairs = 4;
    r.inter_task_crossovers = 3;
    r.positive_transfers = 2;
    r.negative_transfers = 4;
    r.mate_fallbacks = 1;
    r.missing_parent_costs = 2;
    Eigen::MatrixXd m(2, 2);
    m << 1, 0.25, 0.25, 0.5;
    r.rmp = m;
    const auto back = record_from_json_line(to_json_line(r));
    CHECK(back.generation == 7);
    CHECK(back.evaluations == 1234);
    CHECK(back.best_costs == r.best_costs);
    CHECK(back.mate_fallbacks == 1);
    CHECK(back.missing_parent_costs == 2);
    REQUIRE(back.rmp.has_value());
    CHECK(*back.rmp == m);
    r.rmp.reset();
    CHECK_FALSE(record_from_json_line(to_json_line(r)).rmp.has_value());
    CHECK_THROWS(record_from_json_line("{\"gen\": 1"));
}
