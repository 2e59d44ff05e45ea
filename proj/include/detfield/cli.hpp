#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "detfield/errors.hpp"
#include "detfield/linalg.hpp"
#include "detfield/pointfield.hpp"
#include "detfield/realization.hpp"

namespace detfield::cli {

/// Malformed command line or configuration. Maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { phi, gramian, det, gap, counts, recover, evolve, tw2, verify };
enum class OutputFormat { csv, json };
enum class DetKind { gramian, hankel, square, zs };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command command);

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 1;  // number of intervals; steps + 1 points

  std::vector<double> points() const;
};

struct Params {
  Complex lambda = 1.0;
  Complex z = 0.0;
  std::vector<double> times{0.0};
  FieldCase field_case = FieldCase::self_adjoint;
  DetKind det_kind = DetKind::gramian;
  bool nystrom = false;           // det: Nystrom oracle instead of the closed form
  bool zs = false;                // recover: Zakharov-Shabat solution
  std::size_t nodes = 200;        // "N"
  double length = 0.0;            // "L"; 0 picks the default truncation
  std::uint64_t seed = 0;
};

/// A system is given either by bound states or by (A, B, C).
struct SystemSpec {
  std::optional<ScatteringData> bound_states;
  std::optional<StateSpaceSystem> matrices;

  StateSpaceSystem system() const;
};

struct RunConfig {
  Command command = Command::verify;
  bool command_set = false;  // the file named a command
  std::optional<SystemSpec> system;
  Grid grid;
  Params params;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
};

/// Parses a "version": 1 configuration. A string-valued "system" is read as
/// a file path relative to base_dir. Throws UsageError.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Parses a system descriptor: {"bound_states": [{"kappa", "c"}...]} or
/// {"A": [[[re, im], ...], ...], "B": [...], "C": [...]}. Entries may also be
/// plain numbers.
SystemSpec parse_system(const std::string& text);

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool ok = true;  // false when verify reports a failure
};

/// Evaluates the command over the grid. Library errors propagate.
Table run(const RunConfig& config);

std::string format_number(double value);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Full front-end: `detfield <command> --config <path> [--out <path>]
/// [--format csv|json]`. Returns the process exit status.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace detfield::cli
