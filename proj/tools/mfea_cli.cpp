// Command-line front end: run one engine, run a full bench plan, or rebuild
// the reports of an existing output directory.
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mfea/harness.hpp"

namespace {

struct Options {
    std::string env = "TE_8";
    std::string data_dir = mfea::default_data_dir();
    std::vector<std::string> engines;
    std::string preset;
    std::optional<std::int64_t> budget;
    std::optional<int> reps;
    std::uint64_t seed = 1;
    std::size_t pop = 200;
    double w = 0.5;
    double p_m = 0.2;
    double delta_inc = 0.99;
    double delta_dec = 0.99;
    double rmp = 0.9;
    double rmp_init = 0.95;
    std::string out;
    unsigned jobs = 1;
};

void add_plan_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("-e,--env", o.env, "built-in environment (TE_4_1..TE_4_4, TE_8) or config file")
        ->capture_default_str();
    cmd->add_option("--data-dir", o.data_dir, "directory holding the instance files")->capture_default_str();
    cmd->add_option("--preset", o.preset, "desk (1e5 evals, 5 reps) or paper (6e5 evals, 20 reps)")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("-b,--budget", o.budget, "evaluation budget per run");
    cmd->add_option("-s,--seed", o.seed, "base seed")->capture_default_str();
    cmd->add_option("--pop", o.pop, "population size (even)")->capture_default_str();
    cmd->add_option("--w", o.w, "dOX window scale W")->capture_default_str();
    cmd->add_option("--pm", o.p_m, "2-opt mutation probability")->capture_default_str();
    cmd->add_option("--delta-inc", o.delta_inc, "RMP increase factor")->capture_default_str();
    cmd->add_option("--delta-dec", o.delta_dec, "RMP decrease factor")->capture_default_str();
    cmd->add_option("--rmp", o.rmp, "scalar RMP of MFEA")->capture_default_str();
    cmd->add_option("--rmp-init", o.rmp_init, "initial RMP matrix entry of dMFEA-II")->capture_default_str();
    cmd->add_option("-o,--out", o.out, "output directory");
    cmd->add_option("-j,--jobs", o.jobs, "parallel runs")->capture_default_str()->check(CLI::PositiveNumber);
}

mfea::ExperimentPlan make_plan(const Options& o, bool single_run) {
    mfea::ExperimentPlan plan;
    plan.environment = mfea::load_environment(o.env, o.data_dir);
    std::int64_t budget = 600000;
    int reps = 20;
    if (o.preset == "desk") {
        budget = 100000;
        reps = 5;
    }
    if (single_run) reps = 1;
    if (o.budget) budget = *o.budget;
    if (o.reps) reps = *o.reps;

    plan.engines.clear();
    for (const auto& e : o.engines) plan.engines.push_back(mfea::parse_engine_kind(e));
    if (plan.engines.empty()) plan.engines = {mfea::EngineKind::Dmfea2, mfea::EngineKind::Mfea};
    plan.repetitions = reps;
    plan.base_seed = o.seed;
    plan.output_dir = o.out;
    plan.jobs = o.jobs;
    auto& c = plan.config;
    c.eval_budget = budget;
    c.population_size = o.pop;
    c.w = o.w;
    c.p_m = o.p_m;
    c.delta_inc = o.delta_inc;
    c.delta_dec = o.delta_dec;
    c.rmp_scalar = o.rmp;
    c.rmp_init = o.rmp_init;
    return plan;
}

void print_plan(const mfea::ExperimentPlan& plan) {
    std::cerr << "environment " << plan.environment.name << ": " << plan.environment.tasks.size()
              << " tasks, D_max " << plan.environment.d_max << "; budget " << plan.config.eval_budget << ", "
              << plan.repetitions << " repetition(s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete evolutionary multitasking (MFEA and dMFEA-II) on TSP/CVRP benchmarks"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "run one engine on one environment");
    add_plan_flags(run, o);
    std::string engine = "dmfea2";
    run->add_option("--engine", engine, "mfea or dmfea2")->capture_default_str();
    run->add_option("-r,--reps", o.reps, "repetitions (default 1)");

    auto* bench = app.add_subcommand("bench", "run every selected engine x repetition and report");
    add_plan_flags(bench, o);
    bench->add_option("--engines", o.engines, "engines to run (default: dmfea2 mfea)");
    bench->add_option("-r,--reps", o.reps, "repetitions (default 20, desk preset 5)");

    auto* report = app.add_subcommand("report", "re-aggregate the traces of an output directory");
    std::string report_dir;
    report->add_option("dir", report_dir, "output directory of a previous run or bench")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            const auto result = mfea::reaggregate(report_dir);
            std::cout << mfea::format_summary(result.rows);
            return 0;
        }
        if (run->parsed()) o.engines = {engine};
        const auto plan = make_plan(o, run->parsed());
        print_plan(plan);
        const auto result = mfea::run_experiment(plan);
        std::cout << mfea::format_summary(result.rows);
        if (!plan.output_dir.empty()) std::cerr << "reports written to " << plan.output_dir << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
