#ifndef MFEA_PARSERS_HPP
#define MFEA_PARSERS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mfea/instance.hpp"

namespace mfea {

enum class ProblemKind { TsplibTsp, AugeratVrp };

/// Malformed benchmark file. `line()` is 1-based; 0 means the problem is not
/// tied to one line (for example a missing header).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line);
    /// Same error with `context` (usually the file path) prepended.
    ParseError(const std::string& context, const ParseError& inner);
    int line() const { return line_; }

private:
    int line_;
};

struct RawProblemFile {
    std::string path;
    ProblemKind kind;
    std::string text;
};

/// Reads a file and infers its kind from the TYPE keyword (not the name).
RawProblemFile read_problem_file(const std::string& path);
ProblemKind detect_kind(std::string_view text);

/// Header keywords that are neither understood nor known free text are
/// appended to `warnings` (if given) and otherwise ignored.
TspInstance parse_tsplib(std::string_view text, std::vector<std::string>* warnings = nullptr);
CvrpInstance parse_vrp(std::string_view text, std::vector<std::string>* warnings = nullptr);

using ParsedInstance = std::variant<TspInstance, CvrpInstance>;
ParsedInstance parse_problem(const RawProblemFile& file, std::vector<std::string>* warnings = nullptr);

/// Serializers producing files that parse back to an equal instance.
std::string write_tsplib(const TspInstance& inst);
std::string write_vrp(const CvrpInstance& inst);

/// Reads a TSPLIB TOUR_SECTION (1-based node ids terminated by -1).
std::vector<int> parse_tour(std::string_view text);

}  // namespace mfea

#endif
