#pragma once

// Readers and writers for the FOON text format, motion rate tables, the
// kitchen / goal JSON files, and Graphviz DOT export.
//
// FOON text: units are delimited by lines holding only "//". Inside a unit
// every line is a tab-separated record:
//
//   O<TAB>label        opens an object node
//   S<TAB>state        adds a state to the last opened object
//   I<TAB>ingredient   adds an ingredient to the last opened object
//   M<TAB>label        the motion; objects before it are inputs, after it outputs
//
// Blank lines and trailing whitespace are ignored.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foon/model.hpp"

namespace foon {

enum class ParseErrorKind {
  malformed_line,
  unknown_record_tag,
  empty_unit,
  missing_motion,
  duplicate_motion_rate,
  rate_out_of_range,
  bad_json_shape,
};

/// Hyphenated name, e.g. "missing-motion".
std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
  ParseError(std::string file, std::size_t line, ParseErrorKind kind, std::string message);

  const std::string& file() const noexcept { return file_; }
  /// 1-based line of the first offending source line.
  std::size_t line() const noexcept { return line_; }
  ParseErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string file_;
  std::size_t line_;
  ParseErrorKind kind_;
  std::string detail_;
};

/// Units in file order, without deduplication.
std::vector<FunctionalUnit> parse_functional_units(std::istream& in, std::string_view file = "FOON.txt");

Subgraph parse_subgraph(std::istream& in, std::string name, std::string_view file = "FOON.txt");
UniversalFoon parse_universal_foon(std::istream& in, std::string_view file = "FOON.txt");

void write_functional_units(std::ostream& out, std::span<const FunctionalUnit> units);
std::string serialize_universal_foon(const UniversalFoon& foon);
std::string serialize_task_tree(const TaskTree& tree);

SuccessRateTable parse_motion_rates(std::istream& in, std::string_view file = "motion.txt");
std::string serialize_motion_rates(const SuccessRateTable& rates);

/// JSON array of {"label": ..., "states": [...], "ingredients": [...]}.
Kitchen parse_kitchen(std::istream& in, std::string_view file = "kitchen.json");
std::vector<ObjectNode> parse_goals(std::istream& in, std::string_view file = "goal_nodes.json");
std::string serialize_object_nodes(std::span<const ObjectNode> nodes);

/// Object nodes become green vertices, each unit's motion a red vertex.
std::string export_dot(std::span<const FunctionalUnit> units);
inline std::string export_dot(const UniversalFoon& foon) { return export_dot(foon.units()); }
inline std::string export_dot(const TaskTree& tree) { return export_dot(tree.steps); }

} // namespace foon
