#ifndef MFEA_HARNESS_HPP
#define MFEA_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfea/engine.hpp"
#include "mfea/parsers.hpp"
#include "mfea/tasks.hpp"

namespace mfea {

struct InstanceRef {
    std::string name;
    std::string path;
    ProblemKind kind = ProblemKind::TsplibTsp;
    std::optional<double> known_optimum;
};

struct Environment {
    std::string name;
    std::vector<InstanceRef> instances;
    std::vector<Task> tasks;
    int d_max = 0;
};

/// TE_4_1, TE_4_2, TE_4_3, TE_4_4 and TE_8.
std::vector<std::string> builtin_environment_names();

/// Best known cost of a benchmark instance, if it is one of the eight
/// built-ins.
std::optional<double> known_optimum(const std::string& instance_name);

/// $MFEA_DATA_DIR if set, else the data/ directory of the source tree.
std::string default_data_dir();

/// Loads a built-in environment by name (instances read from `data_dir`) or
/// an environment config file: a JSON object
///   {"name": "...", "instances": [{"path": "...", "kind": "tsp"|"cvrp",
///                                  "optimum": 123}, ...]}
/// with paths relative to the config file; "kind" and "optimum" are
/// optional. Throws std::invalid_argument for unknown names and
/// ParseError / std::runtime_error (with the file path) for bad files.
Environment load_environment(const std::string& name_or_path, const std::string& data_dir = default_data_dir());

struct ExperimentPlan {
    Environment environment;
    std::vector<EngineKind> engines{EngineKind::Dmfea2, EngineKind::Mfea};
    int repetitions = 20;
    EngineConfig config;  // eval_budget and parameters; seed is derived per repetition
    std::uint64_t base_seed = 1;
    std::string output_dir;  // empty: nothing is written
    unsigned jobs = 1;
};

/// One finished engine run.
struct RunRecord {
    EngineKind engine = EngineKind::Dmfea2;
    int repetition = 0;
    std::uint64_t seed = 0;
    std::int64_t evaluations = 0;
    std::vector<double> final_best;
};

enum class Marker { Significant, NotSignificant, NotApplicable };
std::string marker_name(Marker m);

struct ReportRow {
    std::string environment;
    EngineKind engine = EngineKind::Dmfea2;
    std::string instance;
    double mean = 0.0;
    double std_dev = 0.0;
    Marker marker = Marker::NotApplicable;
    std::optional<double> z_value;  // dMFEA-II vs MFEA, when the marker applies
    std::optional<double> known_optimum;
};

struct ExperimentResult {
    std::vector<ReportRow> rows;
    std::vector<RunRecord> runs;
};

/// Runs every engine x repetition with seed derive_seed(base_seed, r), so the
/// two engines are paired per repetition. When output_dir is set, the
/// manifest is written first and each run's trace as soon as it finishes;
/// a failing run rethrows after the completed traces are on disk.
ExperimentResult run_experiment(const ExperimentPlan& plan);

/// Per-instance mean/std for each engine plus the rank-sum marker
/// (dMFEA-II tested as "A" against MFEA) when both engines have at least two
/// runs. Rows are ordered by engine as listed, then by instance.
std::vector<ReportRow> aggregate(const std::string& environment, const std::vector<InstanceRef>& instances,
                                 const std::vector<EngineKind>& engines, const std::vector<RunRecord>& runs);

/// Writes summary.tsv, results.json, convergence.tsv and (when dMFEA-II ran)
/// rmp_trajectory.tsv into output_dir. Traces are read back from
/// output_dir/traces. Throws std::invalid_argument for empty rows and
/// std::runtime_error if a file cannot be written.
void emit_report(const std::string& output_dir, const ExperimentResult& result);

/// Summary table as written to summary.tsv.
std::string format_summary(const std::vector<ReportRow>& rows);

/// Rebuilds the runs of an output directory from its manifest and traces,
/// re-aggregates them and rewrites the reports.
ExperimentResult reaggregate(const std::string& output_dir);

std::string trace_file_name(EngineKind engine, int repetition);

}  // namespace mfea

#endif
