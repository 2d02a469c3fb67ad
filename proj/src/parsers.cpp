#include "mfea/parsers.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace mfea {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

enum class Section { Header, NodeCoord, Demand, Depot, Done };

struct HeaderValue {
    std::string value;
    int line;
};

struct CoordRow {
    Point p;
    int line;
};

// Everything the two formats share, collected in one pass.
struct RawSections {
    std::map<std::string, HeaderValue> headers;
    std::map<int, CoordRow> coords;
    std::map<int, std::pair<int, int>> demands;  // id -> (demand, line)
    std::vector<std::pair<int, int>> depots;     // (id, line)
    int coord_section_end = 0;                   // line that closed NODE_COORD_SECTION
    int demand_section_end = 0;
    int last_line = 0;
};

std::optional<Section> section_keyword(const std::string& upper) {
    if (upper == "NODE_COORD_SECTION") return Section::NodeCoord;
    if (upper == "DEMAND_SECTION") return Section::Demand;
    if (upper == "DEPOT_SECTION") return Section::Depot;
    if (upper == "EOF") return Section::Done;
    return std::nullopt;
}

bool is_known_header(const std::string& key, bool vrp) {
    static const char* common[] = {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE"};
    for (const char* k : common) {
        if (key == k) return true;
    }
    return vrp && key == "CAPACITY";
}

RawSections scan(std::string_view text, bool vrp, std::vector<std::string>* warnings) {
    RawSections raw;
    Section section = Section::Header;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size() && section != Section::Done) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        raw.last_line = line_no;
        if (line.empty()) continue;

        const auto colon = line.find(':');
        std::string head = to_upper(trim(colon == std::string_view::npos ? line : line.substr(0, colon)));
        if (auto next = section_keyword(head)) {
            if (section == Section::NodeCoord) raw.coord_section_end = line_no;
            if (section == Section::Demand) raw.demand_section_end = line_no;
            section = *next;
            continue;
        }
        if (colon != std::string_view::npos && !head.empty() && std::isalpha(static_cast<unsigned char>(head[0]))) {
            if (section == Section::NodeCoord) raw.coord_section_end = line_no;
            if (section == Section::Demand) raw.demand_section_end = line_no;
            section = Section::Header;
            if (!is_known_header(head, vrp) && warnings) {
                warnings->push_back("line " + std::to_string(line_no) + ": ignoring unknown keyword " + head);
            }
            raw.headers[head] = HeaderValue{std::string(trim(line.substr(colon + 1))), line_no};
            continue;
        }

        std::istringstream in{std::string(line)};
        switch (section) {
            case Section::Header:
                if (warnings) {
                    warnings->push_back("line " + std::to_string(line_no) + ": ignoring unrecognised line");
                }
                break;
            case Section::NodeCoord: {
                int id = 0;
                Point p;
                if (!(in >> id >> p.x >> p.y) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
                    throw ParseError("malformed coordinate row", line_no);
                }
                if (!raw.coords.emplace(id, CoordRow{p, line_no}).second) {
                    throw ParseError("duplicate node id " + std::to_string(id), line_no);
                }
                break;
            }
            case Section::Demand: {
                int id = 0;
                int demand = 0;
                if (!(in >> id >> demand) || demand < 0) {
                    throw ParseError("malformed demand row", line_no);
                }
                if (!raw.demands.emplace(id, std::pair{demand, line_no}).second) {
                    throw ParseError("duplicate demand for node " + std::to_string(id), line_no);
                }
                break;
            }
            case Section::Depot: {
                int id = 0;
                if (!(in >> id)) {
                    throw ParseError("malformed depot row", line_no);
                }
                if (id == -1) {
                    section = Section::Header;
                } else {
                    raw.depots.emplace_back(id, line_no);
                }
                break;
            }
            case Section::Done:
                break;
        }
    }
    if (section == Section::NodeCoord) raw.coord_section_end = line_no;
    if (section == Section::Demand) raw.demand_section_end = line_no;
    return raw;
}

const HeaderValue& require_header(const RawSections& raw, const std::string& key) {
    auto it = raw.headers.find(key);
    if (it == raw.headers.end()) {
        throw ParseError("missing " + key + " header", 0);
    }
    return it->second;
}

int header_int(const RawSections& raw, const std::string& key) {
    const auto& h = require_header(raw, key);
    try {
        std::size_t used = 0;
        const int v = std::stoi(h.value, &used);
        if (used != h.value.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ParseError(key + " is not an integer: '" + h.value + "'", h.line);
    }
}

void check_type(const RawSections& raw, const std::string& expected) {
    const auto& type = require_header(raw, "TYPE");
    if (to_upper(type.value) != expected) {
        throw ParseError("expected TYPE " + expected + ", found '" + type.value + "'", type.line);
    }
    const auto& ewt = require_header(raw, "EDGE_WEIGHT_TYPE");
    if (to_upper(ewt.value) != "EUC_2D") {
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + ewt.value + "' (only EUC_2D)", ewt.line);
    }
}

// Coordinates must cover ids 1..dimension exactly.
std::vector<Point> ordered_coords(const RawSections& raw, int dimension) {
    if (raw.coords.empty()) {
        throw ParseError("missing NODE_COORD_SECTION", 0);
    }
    for (const auto& [id, row] : raw.coords) {
        if (id < 1 || id > dimension) {
            throw ParseError("node id " + std::to_string(id) + " outside 1.." + std::to_string(dimension), row.line);
        }
    }
    if (static_cast<int>(raw.coords.size()) != dimension) {
        throw ParseError("DIMENSION is " + std::to_string(dimension) + " but NODE_COORD_SECTION has " +
                             std::to_string(raw.coords.size()) + " rows",
                         raw.coord_section_end);
    }
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(dimension));
    for (const auto& [id, row] : raw.coords) {
        out.push_back(row.p);
    }
    return out;
}

std::string name_of(const RawSections& raw) {
    auto it = raw.headers.find("NAME");
    return it == raw.headers.end() ? std::string{} : it->second.value;
}

std::string format_coord(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

ParseError::ParseError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

ParseError::ParseError(const std::string& context, const ParseError& inner)
    : std::runtime_error(context + ": " + inner.what()), line_(inner.line()) {}

int euc2d_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return static_cast<int>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

void validate(const TspInstance& inst) {
    if (inst.dimension() < 3) {
        throw std::invalid_argument("TSP instance '" + inst.name + "' needs at least 3 cities");
    }
}

void validate(const CvrpInstance& inst) {
    if (inst.capacity <= 0) {
        throw std::invalid_argument("CVRP instance '" + inst.name + "' has non-positive capacity");
    }
    if (inst.customer_coords.empty() || inst.demands.size() != inst.customer_coords.size()) {
        throw std::invalid_argument("CVRP instance '" + inst.name + "' has mismatched demands");
    }
    for (int d : inst.demands) {
        if (d < 0 || d > inst.capacity) {
            throw std::invalid_argument("CVRP instance '" + inst.name + "' has a demand outside [0, capacity]");
        }
    }
}

ProblemKind detect_kind(std::string_view text) {
    const RawSections raw = scan(text, true, nullptr);
    const auto& type = require_header(raw, "TYPE");
    const std::string t = to_upper(type.value);
    if (t == "TSP") return ProblemKind::TsplibTsp;
    if (t == "CVRP") return ProblemKind::AugeratVrp;
    throw ParseError("unsupported TYPE '" + type.value + "'", type.line);
}

RawProblemFile read_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open instance file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    RawProblemFile file{path, ProblemKind::TsplibTsp, buf.str()};
    try {
        file.kind = detect_kind(file.text);
    } catch (const ParseError& e) {
        throw ParseError(path, e);
    }
    return file;
}

TspInstance parse_tsplib(std::string_view text, std::vector<std::string>* warnings) {
    const RawSections raw = scan(text, false, warnings);
    check_type(raw, "TSP");
    const int dimension = header_int(raw, "DIMENSION");
    if (dimension < 3) {
        throw ParseError("DIMENSION must be at least 3", require_header(raw, "DIMENSION").line);
    }
    TspInstance inst{name_of(raw), ordered_coords(raw, dimension)};
    return inst;
}

CvrpInstance parse_vrp(std::string_view text, std::vector<std::string>* warnings) {
    const RawSections raw = scan(text, true, warnings);
    check_type(raw, "CVRP");
    const int dimension = header_int(raw, "DIMENSION");
    const int capacity = header_int(raw, "CAPACITY");
    if (dimension < 2) {
        throw ParseError("DIMENSION must be at least 2", require_header(raw, "DIMENSION").line);
    }
    if (capacity <= 0) {
        throw ParseError("CAPACITY must be positive", require_header(raw, "CAPACITY").line);
    }
    const std::vector<Point> coords = ordered_coords(raw, dimension);
    if (raw.depots.empty()) {
        throw ParseError("missing depot (DEPOT_SECTION)", 0);
    }
    if (raw.depots.size() > 1) {
        throw ParseError("only single-depot instances are supported", raw.depots[1].second);
    }
    const auto [depot_id, depot_line] = raw.depots.front();
    if (depot_id < 1 || depot_id > dimension) {
        throw ParseError("depot id " + std::to_string(depot_id) + " outside 1.." + std::to_string(dimension), depot_line);
    }
    if (static_cast<int>(raw.demands.size()) != dimension) {
        throw ParseError("DIMENSION is " + std::to_string(dimension) + " but DEMAND_SECTION has " +
                             std::to_string(raw.demands.size()) + " rows",
                         raw.demand_section_end);
    }

    CvrpInstance inst;
    inst.name = name_of(raw);
    inst.capacity = capacity;
    inst.depot = coords[static_cast<std::size_t>(depot_id - 1)];
    for (const auto& [id, row] : raw.demands) {
        const auto [demand, line] = row;
        if (id < 1 || id > dimension) {
            throw ParseError("demand for unknown node " + std::to_string(id), line);
        }
        if (id == depot_id) continue;
        if (demand > capacity) {
            throw ParseError("demand " + std::to_string(demand) + " of node " + std::to_string(id) +
                                 " exceeds capacity " + std::to_string(capacity),
                             line);
        }
        inst.customer_coords.push_back(coords[static_cast<std::size_t>(id - 1)]);
        inst.demands.push_back(demand);
    }
    return inst;
}

ParsedInstance parse_problem(const RawProblemFile& file, std::vector<std::string>* warnings) {
    try {
        if (file.kind == ProblemKind::TsplibTsp) {
            return parse_tsplib(file.text, warnings);
        }
        return parse_vrp(file.text, warnings);
    } catch (const ParseError& e) {
        throw ParseError(file.path, e);
    }
}

std::string write_tsplib(const TspInstance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name << "\nTYPE : TSP\nDIMENSION : " << inst.dimension()
        << "\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n";
    for (int i = 0; i < inst.dimension(); ++i) {
        const Point& p = inst.coords[static_cast<std::size_t>(i)];
        out << i + 1 << ' ' << format_coord(p.x) << ' ' << format_coord(p.y) << '\n';
    }
    out << "EOF\n";
    return out.str();
}

std::string write_vrp(const CvrpInstance& inst) {
    std::ostringstream out;
    const int n = inst.dimension();
    out << "NAME : " << inst.name << "\nTYPE : CVRP\nDIMENSION : " << n + 1
        << "\nEDGE_WEIGHT_TYPE : EUC_2D\nCAPACITY : " << inst.capacity << "\nNODE_COORD_SECTION\n";
    out << "1 " << format_coord(inst.depot.x) << ' ' << format_coord(inst.depot.y) << '\n';
    for (int i = 0; i < n; ++i) {
        const Point& p = inst.customer_coords[static_cast<std::size_t>(i)];
        out << i + 2 << ' ' << format_coord(p.x) << ' ' << format_coord(p.y) << '\n';
    }
    out << "DEMAND_SECTION\n1 0\n";
    for (int i = 0; i < n; ++i) {
        out << i + 2 << ' ' << inst.demands[static_cast<std::size_t>(i)] << '\n';
    }
    out << "DEPOT_SECTION\n 1\n -1\nEOF\n";
    return out.str();
}

std::vector<int> parse_tour(std::string_view text) {
    std::vector<int> tour;
    bool in_tour = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string line = to_upper(trim(text.substr(pos, nl - pos)));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line == "TOUR_SECTION") {
            in_tour = true;
            continue;
        }
        if (!in_tour) continue;
        if (line == "EOF") break;
        std::istringstream in(line);
        int id = 0;
        while (in >> id) {
            if (id == -1) return tour;
            tour.push_back(id);
        }
        if (!in.eof()) {
            throw ParseError("malformed tour row", line_no);
        }
    }
    if (!in_tour) {
        throw ParseError("missing TOUR_SECTION", 0);
    }
    return tour;
}

}  // namespace mfea
