#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tq/ext/coframe.hpp"
#include "tq/sym/error.hpp"

namespace tq::cli {

using Record = nlohmann::ordered_json;

/// Malformed definition file; line and column are 1-based.
class DefinitionError : public Error {
 public:
  DefinitionError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// A spacetime read from a .st file.
struct Definition {
  std::string name;
  ext::ChartPtr chart;
  std::shared_ptr<ext::Coframe> coframe;
  std::optional<ext::Form> potential;  // A = i a, stored with the imaginary tag
  std::vector<std::pair<std::string, std::string>> expected;
};

Definition parse_definition(const std::string& text, const std::string& source = "<input>");
Definition load_definition(const std::string& path);

/// Parses "c0*dx0 + c1*dx1 + ..." on the chart; throws tq::Error when the
/// text is not linear in the coordinate differentials.
ext::Form parse_one_form(const std::string& text, const ext::ChartPtr& chart);

extern const char* const kSchemaVersion;
extern const std::vector<std::string> kCases;

/// {"schema": ..., "version": ..., "record": r}
Record envelope(const Record& r);
/// One "[key]" section per top-level key; arrays one element per line,
/// objects as "key = value" lines.
std::string render_text(const Record& r);

struct Options {
  std::string command;                   // connection, curvature, invariants, verify, gauge, atlas, quantize, case
  std::optional<std::string> file;
  std::optional<std::string> case_name;  // or "all" for `case --all`
  std::optional<std::string> json_path;
  bool check_golden = false;
  bool verbose = false;
  std::optional<std::string> phase;      // gauge / quantize: u(1) phase chi
  std::optional<std::string> angle;      // gauge: rotation angle for T_phi
  std::optional<std::string> coordinate; // quantize: periodic coordinate
  std::string golden_dir = "data/golden";
  std::uint64_t seed = 0;
};

/// Runs one command, writing the text report to `out` and diagnostics to
/// `err`. Returns 0 on pass, 2 on a golden or verification mismatch, 1 on error.
int run(const Options& o, std::ostream& out, std::ostream& err);

/// Result record of a built-in case for a command.
Record case_record(const std::string& name, const std::string& command, std::uint64_t seed = 0);

}  // namespace tq::cli
