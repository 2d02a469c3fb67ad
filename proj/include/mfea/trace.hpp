#ifndef MFEA_TRACE_HPP
#define MFEA_TRACE_HPP

#include <iosfwd>
#include <string>

#include "mfea/engine.hpp"

namespace mfea {

/// One JSON object per line, one line per generation:
/// {"gen":..,"evals":..,"best":[..],"mixed_pairs":..,...,"rmp":[[..],..]}
/// "rmp" is present only for dMFEA-II runs.
std::string to_json_line(const GenerationRecord& record);
GenerationRecord record_from_json_line(const std::string& line);

void write_trace(std::ostream& out, const RunTrace& trace);
RunTrace read_trace(std::istream& in);

void save_trace(const std::string& path, const RunTrace& trace);
RunTrace load_trace(const std::string& path);

}  // namespace mfea

#endif
