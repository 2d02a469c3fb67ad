#include "mfea/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace mfea {

using nlohmann::json;

std::string to_json_line(const GenerationRecord& r) {
    json j;
    j["gen"] = r.generation;
    j["evals"] = r.evaluations;
    j["best"] = r.best_costs;
    j["mixed_pairs"] = r.mixed_pairs;
    j["inter_task"] = r.inter_task_crossovers;
    j["positive"] = r.positive_transfers;
    j["negative"] = r.negative_transfers;
    j["mate_fallbacks"] = r.mate_fallbacks;
    j["missing_parent_costs"] = r.missing_parent_costs;
    if (r.rmp) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < r.rmp->rows(); ++i) {
            json row = json::array();
            for (Eigen::Index c = 0; c < r.rmp->cols(); ++c) row.push_back((*r.rmp)(i, c));
            rows.push_back(std::move(row));
        }
        j["rmp"] = std::move(rows);
    }
    return j.dump();
}

GenerationRecord record_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    GenerationRecord r;
    r.generation = j.at("gen").get<int>();
    r.evaluations = j.at("evals").get<std::int64_t>();
    r.best_costs = j.at("best").get<std::vector<double>>();
    r.mixed_pairs = j.value("mixed_pairs", 0);
    r.inter_task_crossovers = j.value("inter_task", 0);
    r.positive_transfers = j.value("positive", 0);
    r.negative_transfers = j.value("negative", 0);
    r.mate_fallbacks = j.value("mate_fallbacks", 0);
    r.missing_parent_costs = j.value("missing_parent_costs", 0);
    if (j.contains("rmp")) {
        const auto& rows = j.at("rmp");
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index c = 0; c < n; ++c) m(i, c) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)).get<double>();
        }
        r.rmp = std::move(m);
    }
    return r;
}

void write_trace(std::ostream& out, const RunTrace& trace) {
    for (const auto& r : trace.records) out << to_json_line(r) << '\n';
}

RunTrace read_trace(std::istream& in) {
    RunTrace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        trace.records.push_back(record_from_json_line(line));
    }
    return trace;
}

void save_trace(const std::string& path, const RunTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace file '" + path + "'");
    write_trace(out, trace);
}

RunTrace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read trace file '" + path + "'");
    return read_trace(in);
}

}  // namespace mfea
