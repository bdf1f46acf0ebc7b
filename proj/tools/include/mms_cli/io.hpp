#ifndef MMS_CLI_IO_HPP_
#define MMS_CLI_IO_HPP_

#include "mms/instance.hpp"
#include "mms/solver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mms::cli {

/// Malformed or inconsistent input file. `what()` carries the location.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Integers fit for a double are written as numbers, everything else as "p/q".
[[nodiscard]] auto rational_to_json(Rational const& r) -> Json;
[[nodiscard]] auto rational_from_json(Json const& j) -> Rational;

/// {"agents": n, "items": m, "utilities": [[...], ...]}
[[nodiscard]] auto instance_to_json(Instance const& inst) -> Json;
[[nodiscard]] auto instance_from_json(Json const& j) -> Instance;

/// {"bundles": [[item, ...], ...]} with 0-based item indices.
[[nodiscard]] auto allocation_to_json(Allocation const& alloc) -> Json;
[[nodiscard]] auto allocation_from_json(Json const& j) -> Allocation;

[[nodiscard]] auto step_to_json(ReductionStep const& step) -> Json;
/// Reads the recorded fields back; result_instance is left empty (use
/// replay_step to rebuild it).
[[nodiscard]] auto step_from_json(Json const& j) -> ReductionStep;

/// Status, coverage, ordered records, tail and final allocation.
[[nodiscard]] auto trace_to_json(SolveOutcome const& out) -> Json;

/// Re-applies the trace's steps to `inst` and composes its tail, returning
/// the allocation the trace describes.
[[nodiscard]] auto replay_trace(Instance const& inst, Json const& trace) -> Allocation;

/// Parses JSON text; syntax errors become input_error with line and column.
[[nodiscard]] auto parse_json(std::string_view text, std::string const& source) -> Json;
/// Two-space indentation with arrays of scalars kept on one line.
[[nodiscard]] auto format_json(Json const& j) -> std::string;
[[nodiscard]] auto read_json_file(std::string const& path) -> Json;
void write_json_file(std::string const& path, Json const& j);

}  // namespace mms::cli

#endif  // MMS_CLI_IO_HPP_
