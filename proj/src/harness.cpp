#include "mfea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mfea/stats.hpp"
#include "mfea/trace.hpp"

namespace mfea {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct BuiltinInstance {
    const char* name;
    const char* file;
    ProblemKind kind;
    double optimum;
};

constexpr BuiltinInstance kInstances[] = {
    {"berlin52", "berlin52.tsp", ProblemKind::TsplibTsp, 7542},
    {"eil51", "eil51.tsp", ProblemKind::TsplibTsp, 426},
    {"st70", "st70.tsp", ProblemKind::TsplibTsp, 675},
    {"eil76", "eil76.tsp", ProblemKind::TsplibTsp, 538},
    {"P-n50-k7", "P-n50-k7.vrp", ProblemKind::AugeratVrp, 554},
    {"P-n50-k8", "P-n50-k8.vrp", ProblemKind::AugeratVrp, 629},
    {"P-n55-k7", "P-n55-k7.vrp", ProblemKind::AugeratVrp, 568},
    {"P-n55-k8", "P-n55-k8.vrp", ProblemKind::AugeratVrp, 598},
};

const std::map<std::string, std::vector<std::string>>& builtin_environments() {
    static const std::map<std::string, std::vector<std::string>> envs = {
        {"TE_4_1", {"berlin52", "eil51", "st70", "eil76"}},
        {"TE_4_2", {"P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k8"}},
        {"TE_4_3", {"eil51", "berlin52", "P-n50-k7", "P-n50-k8"}},
        {"TE_4_4", {"st70", "eil76", "P-n55-k7", "P-n55-k8"}},
        {"TE_8", {"berlin52", "eil51", "st70", "eil76", "P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k8"}},
    };
    return envs;
}

const BuiltinInstance* find_builtin(const std::string& name) {
    for (const auto& b : kInstances) {
        if (name == b.name) return &b;
    }
    return nullptr;
}

std::string kind_name(ProblemKind kind) {
    return kind == ProblemKind::TsplibTsp ? "tsp" : "cvrp";
}

ProblemKind parse_kind(const std::string& s) {
    if (s == "tsp" || s == "TSP") return ProblemKind::TsplibTsp;
    if (s == "cvrp" || s == "CVRP" || s == "vrp") return ProblemKind::AugeratVrp;
    throw std::invalid_argument("unknown instance kind '" + s + "' (expected tsp or cvrp)");
}

Task load_task(InstanceRef& ref) {
    const RawProblemFile file = read_problem_file(ref.path);
    if (file.kind != ref.kind) {
        throw std::runtime_error(ref.path + ": file declares " + kind_name(file.kind) + " but " +
                                 kind_name(ref.kind) + " was expected");
    }
    std::vector<std::string> warnings;
    ParsedInstance parsed = parse_problem(file, &warnings);
    for (const auto& w : warnings) std::clog << "warning: " << ref.path << ": " << w << '\n';
    return std::visit(
        [&](auto&& inst) {
            if (ref.name.empty()) ref.name = inst.name;
            if (inst.name.empty()) inst.name = ref.name;
            return Task(std::move(inst));
        },
        std::move(parsed));
}

Environment finish_environment(std::string name, std::vector<InstanceRef> refs) {
    Environment env;
    env.name = std::move(name);
    for (auto& ref : refs) {
        try {
            env.tasks.push_back(load_task(ref));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(ref.path + ": " + e.what());
        }
        if (!ref.known_optimum) ref.known_optimum = known_optimum(ref.name);
    }
    env.instances = std::move(refs);
    env.d_max = unified_dimension(env.tasks);
    return env;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

json config_json(const EngineConfig& c) {
    return json{{"population_size", c.population_size}, {"eval_budget", c.eval_budget}, {"rmp_scalar", c.rmp_scalar},
                {"rmp_init", c.rmp_init}, {"rmp_floor", c.rmp_floor}, {"p_m", c.p_m}, {"w", c.w},
                {"delta_inc", c.delta_inc}, {"delta_dec", c.delta_dec}};
}

json manifest_json(const ExperimentPlan& plan) {
    json instances = json::array();
    for (const auto& ref : plan.environment.instances) {
        json i{{"name", ref.name}, {"path", ref.path}, {"kind", kind_name(ref.kind)}};
        i["optimum"] = ref.known_optimum ? json(*ref.known_optimum) : json(nullptr);
        instances.push_back(std::move(i));
    }
    json engines = json::array();
    for (auto e : plan.engines) engines.push_back(engine_name(e));
    return json{{"environment", plan.environment.name}, {"d_max", plan.environment.d_max},
                {"instances", std::move(instances)}, {"engines", std::move(engines)},
                {"repetitions", plan.repetitions}, {"base_seed", plan.base_seed},
                {"config", config_json(plan.config)}};
}

// Per-run metadata needed by the reports, kept alongside the traces.
struct ReportContext {
    std::string environment;
    std::vector<std::string> instance_names;
    std::vector<EngineKind> engines;
};

ReportContext context_from_manifest(const json& manifest) {
    ReportContext ctx;
    ctx.environment = manifest.at("environment").get<std::string>();
    for (const auto& i : manifest.at("instances")) ctx.instance_names.push_back(i.at("name").get<std::string>());
    for (const auto& e : manifest.at("engines")) ctx.engines.push_back(parse_engine_kind(e.get<std::string>()));
    return ctx;
}

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    return json::parse(in);
}

std::string convergence_table(const fs::path& dir, const std::vector<RunRecord>& runs,
                              const std::vector<std::string>& names, std::string* rmp_table) {
    std::ostringstream conv;
    std::ostringstream rmp;
    conv << "engine\trepetition\tgeneration\tevaluations";
    for (const auto& n : names) conv << "\tbest_" << n;
    conv << '\n';
    const std::size_t k = names.size();
    rmp << "engine\trepetition\tgeneration\tevaluations";
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) rmp << "\trmp_" << i << '_' << j;
    }
    rmp << '\n';
    bool any_rmp = false;
    for (const auto& run : runs) {
        const fs::path path = dir / "traces" / trace_file_name(run.engine, run.repetition);
        if (!fs::exists(path)) continue;
        const RunTrace trace = load_trace(path.string());
        for (const auto& r : trace.records) {
            conv << engine_name(run.engine) << '\t' << run.repetition << '\t' << r.generation << '\t' << r.evaluations;
            for (double b : r.best_costs) conv << '\t' << fixed(b, 1);
            conv << '\n';
            if (r.rmp) {
                any_rmp = true;
                rmp << engine_name(run.engine) << '\t' << run.repetition << '\t' << r.generation << '\t'
                    << r.evaluations;
                for (Eigen::Index i = 0; i < r.rmp->rows(); ++i) {
                    for (Eigen::Index j = 0; j < r.rmp->cols(); ++j) rmp << '\t' << fixed((*r.rmp)(i, j), 6);
                }
                rmp << '\n';
            }
        }
    }
    *rmp_table = any_rmp ? rmp.str() : std::string{};
    return conv.str();
}

void emit_with_context(const fs::path& dir, const ReportContext& ctx, const ExperimentResult& result) {
    if (result.rows.empty()) {
        throw std::invalid_argument("emit_report: no rows to report");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    write_file(dir / "summary.tsv", format_summary(result.rows));

    json rows = json::array();
    for (const auto& r : result.rows) {
        json row{{"environment", r.environment}, {"engine", engine_name(r.engine)}, {"instance", r.instance},
                 {"mean", r.mean}, {"std", r.std_dev}, {"wilcoxon", marker_name(r.marker)}};
        row["z"] = r.z_value ? json(*r.z_value) : json(nullptr);
        row["optimum"] = r.known_optimum ? json(*r.known_optimum) : json(nullptr);
        rows.push_back(std::move(row));
    }
    json runs = json::array();
    for (const auto& r : result.runs) {
        runs.push_back(json{{"engine", engine_name(r.engine)}, {"repetition", r.repetition}, {"seed", r.seed},
                            {"evaluations", r.evaluations}, {"final_best", r.final_best}});
    }
    write_file(dir / "results.json",
               json{{"environment", ctx.environment}, {"rows", std::move(rows)}, {"runs", std::move(runs)}}.dump(2) +
                   "\n");

    std::string rmp;
    write_file(dir / "convergence.tsv", convergence_table(dir, result.runs, ctx.instance_names, &rmp));
    if (!rmp.empty()) write_file(dir / "rmp_trajectory.tsv", rmp);
}

}  // namespace

std::vector<std::string> builtin_environment_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : builtin_environments()) names.push_back(name);
    return names;
}

std::optional<double> known_optimum(const std::string& instance_name) {
    if (const auto* b = find_builtin(instance_name)) return b->optimum;
    return std::nullopt;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("MFEA_DATA_DIR"); env && *env) return env;
    return MFEA_DEFAULT_DATA_DIR;
}

Environment load_environment(const std::string& name_or_path, const std::string& data_dir) {
    const auto& envs = builtin_environments();
    if (auto it = envs.find(name_or_path); it != envs.end()) {
        std::vector<InstanceRef> refs;
        for (const auto& inst : it->second) {
            const auto* b = find_builtin(inst);
            refs.push_back(InstanceRef{b->name, (fs::path(data_dir) / b->file).string(), b->kind, b->optimum});
        }
        return finish_environment(it->first, std::move(refs));
    }
    if (!fs::is_regular_file(name_or_path)) {
        std::string known;
        for (const auto& n : builtin_environment_names()) known += " " + n;
        throw std::invalid_argument("unknown environment '" + name_or_path + "' (built-ins:" + known +
                                    "; otherwise pass a config file)");
    }
    json cfg;
    try {
        cfg = read_json(name_or_path);
    } catch (const json::exception& e) {
        throw std::runtime_error(name_or_path + ": " + e.what());
    }
    const fs::path base = fs::path(name_or_path).parent_path();
    std::vector<InstanceRef> refs;
    try {
        for (const auto& item : cfg.at("instances")) {
            InstanceRef ref;
            fs::path p = item.at("path").get<std::string>();
            ref.path = (p.is_absolute() ? p : base / p).string();
            ref.kind = item.contains("kind") ? parse_kind(item.at("kind").get<std::string>())
                                             : read_problem_file(ref.path).kind;
            if (item.contains("name")) ref.name = item.at("name").get<std::string>();
            if (item.contains("optimum") && !item.at("optimum").is_null()) ref.known_optimum = item.at("optimum").get<double>();
            refs.push_back(std::move(ref));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(name_or_path + ": " + e.what());
    }
    if (refs.empty()) {
        throw std::runtime_error(name_or_path + ": environment lists no instances");
    }
    const std::string name = cfg.value("name", fs::path(name_or_path).stem().string());
    return finish_environment(name, std::move(refs));
}

std::string marker_name(Marker m) {
    switch (m) {
        case Marker::Significant: return "significant";
        case Marker::NotSignificant: return "not_significant";
        case Marker::NotApplicable: break;
    }
    return "n/a";
}

std::string trace_file_name(EngineKind engine, int repetition) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_rep%03d.jsonl", engine_name(engine).c_str(), repetition);
    return buf;
}

std::vector<ReportRow> aggregate(const std::string& environment, const std::vector<InstanceRef>& instances,
                                 const std::vector<EngineKind>& engines, const std::vector<RunRecord>& runs) {
    // samples[engine][instance]; runs are visited in repetition order
    std::vector<RunRecord> ordered = runs;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const RunRecord& a, const RunRecord& b) { return a.repetition < b.repetition; });
    std::map<EngineKind, std::vector<std::vector<double>>> samples;
    for (auto e : engines) samples[e].assign(instances.size(), {});
    for (const auto& run : ordered) {
        auto it = samples.find(run.engine);
        if (it == samples.end()) continue;
        for (std::size_t k = 0; k < instances.size() && k < run.final_best.size(); ++k) {
            it->second[k].push_back(run.final_best[k]);
        }
    }

    const bool comparable = samples.count(EngineKind::Dmfea2) && samples.count(EngineKind::Mfea);
    std::vector<ReportRow> rows;
    for (auto e : engines) {
        for (std::size_t k = 0; k < instances.size(); ++k) {
            const auto& values = samples[e][k];
            if (values.empty()) continue;
            ReportRow row;
            row.environment = environment;
            row.engine = e;
            row.instance = instances[k].name;
            row.known_optimum = instances[k].known_optimum;
            const Summary s = summarize(values);
            row.mean = s.mean;
            row.std_dev = s.std_dev;
            if (comparable) {
                const auto& a = samples[EngineKind::Dmfea2][k];
                const auto& b = samples[EngineKind::Mfea][k];
                if (a.size() >= 2 && b.size() >= 2) {
                    const TestVerdict v = ranksum_test(a, b, 0.90);
                    row.marker = v.significant ? Marker::Significant : Marker::NotSignificant;
                    row.z_value = v.z_value;
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_summary(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "environment\tengine\tinstance\tmean\tstd\twilcoxon\tz\toptimum\n";
    for (const auto& r : rows) {
        out << r.environment << '\t' << engine_name(r.engine) << '\t' << r.instance << '\t' << fixed(r.mean, 2) << '\t'
            << fixed(r.std_dev, 2) << '\t' << marker_name(r.marker) << '\t'
            << (r.z_value ? fixed(*r.z_value, 4) : std::string("n/a")) << '\t'
            << (r.known_optimum ? fixed(*r.known_optimum, 0) : std::string("n/a")) << '\n';
    }
    return out.str();
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
    if (plan.repetitions < 1) throw std::invalid_argument("run_experiment: need at least one repetition");
    if (plan.engines.empty()) throw std::invalid_argument("run_experiment: no engine selected");
    if (plan.environment.tasks.empty()) throw std::invalid_argument("run_experiment: environment has no tasks");
    plan.config.validate(static_cast<int>(plan.environment.tasks.size()));

    const bool persist = !plan.output_dir.empty();
    const fs::path dir = plan.output_dir;
    if (persist) {
        std::error_code ec;
        fs::create_directories(dir / "traces", ec);
        if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
        write_file(dir / "manifest.json", manifest_json(plan).dump(2) + "\n");
    }

    struct Job {
        EngineKind engine;
        int repetition;
    };
    std::vector<Job> jobs;
    for (auto e : plan.engines) {
        for (int r = 0; r < plan.repetitions; ++r) jobs.push_back({e, r});
    }
    std::vector<std::optional<RunRecord>> done(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size() && !failed; i = next++) {
            try {
                const Job& job = jobs[i];
                EngineConfig config = plan.config;
                config.seed = derive_seed(plan.base_seed, static_cast<std::uint64_t>(job.repetition));
                Rng rng(config.seed);
                RunResult result = run_engine(job.engine, plan.environment.tasks, config, rng);
                if (persist) save_trace((dir / "traces" / trace_file_name(job.engine, job.repetition)).string(), result.trace);
                done[i] = RunRecord{job.engine, job.repetition, config.seed, result.evaluations, result.best_costs};
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(plan.jobs, static_cast<unsigned>(jobs.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    ExperimentResult result;
    for (auto& d : done) result.runs.push_back(std::move(*d));
    result.rows = aggregate(plan.environment.name, plan.environment.instances, plan.engines, result.runs);
    if (persist) {
        ReportContext ctx{plan.environment.name, {}, plan.engines};
        for (const auto& ref : plan.environment.instances) ctx.instance_names.push_back(ref.name);
        emit_with_context(dir, ctx, result);
    }
    return result;
}

void emit_report(const std::string& output_dir, const ExperimentResult& result) {
    const fs::path dir = output_dir;
    ReportContext ctx;
    if (fs::exists(dir / "manifest.json")) {
        ctx = context_from_manifest(read_json(dir / "manifest.json"));
    } else if (!result.rows.empty()) {
        ctx.environment = result.rows.front().environment;
        for (const auto& r : result.rows) {
            if (std::find(ctx.instance_names.begin(), ctx.instance_names.end(), r.instance) == ctx.instance_names.end()) {
                ctx.instance_names.push_back(r.instance);
            }
        }
    }
    emit_with_context(dir, ctx, result);
}

ExperimentResult reaggregate(const std::string& output_dir) {
    const fs::path dir = output_dir;
    const json manifest = read_json(dir / "manifest.json");
    const ReportContext ctx = context_from_manifest(manifest);
    std::vector<InstanceRef> instances;
    for (const auto& i : manifest.at("instances")) {
        InstanceRef ref;
        ref.name = i.at("name").get<std::string>();
        ref.path = i.value("path", std::string{});
        ref.kind = parse_kind(i.value("kind", std::string("tsp")));
        if (i.contains("optimum") && !i.at("optimum").is_null()) ref.known_optimum = i.at("optimum").get<double>();
        instances.push_back(std::move(ref));
    }
    const int repetitions = manifest.at("repetitions").get<int>();
    const auto base_seed = manifest.at("base_seed").get<std::uint64_t>();

    ExperimentResult result;
    for (auto e : ctx.engines) {
        for (int r = 0; r < repetitions; ++r) {
            const fs::path path = dir / "traces" / trace_file_name(e, r);
            if (!fs::exists(path)) continue;
            const RunTrace trace = load_trace(path.string());
            if (trace.records.empty()) continue;
            const auto& last = trace.records.back();
            result.runs.push_back(RunRecord{e, r, derive_seed(base_seed, static_cast<std::uint64_t>(r)),
                                            last.evaluations, last.best_costs});
        }
    }
    result.rows = aggregate(ctx.environment, instances, ctx.engines, result.runs);
    emit_with_context(dir, ctx, result);
    return result;
}

}  // namespace mfea
