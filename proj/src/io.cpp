#include "foon/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace foon {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
  case ParseErrorKind::malformed_line: return "malformed-line";
  case ParseErrorKind::unknown_record_tag: return "unknown-record-tag";
  case ParseErrorKind::empty_unit: return "empty-unit";
  case ParseErrorKind::missing_motion: return "missing-motion";
  case ParseErrorKind::duplicate_motion_rate: return "duplicate-motion-rate";
  case ParseErrorKind::rate_out_of_range: return "rate-out-of-range";
  case ParseErrorKind::bad_json_shape: return "bad-json-shape";
  }
  return "unknown";
}

ParseError::ParseError(std::string file, std::size_t line, ParseErrorKind kind, std::string message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " +
                         message),
      file_(std::move(file)), line_(line), kind_(kind), detail_(std::move(message)) {}

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";
constexpr std::string_view kDelimiter = "//";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(kWhitespace);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(kWhitespace);
  return s.substr(b, e - b + 1);
}

// Object or unit under construction while reading FOON text.
struct PendingObject {
  std::string label;
  std::vector<std::string> states;
  std::vector<std::string> ingredients;
  std::size_t line = 0;
};

struct PendingUnit {
  std::vector<PendingObject> inputs;
  std::vector<PendingObject> outputs;
  std::optional<std::string> motion;
  std::size_t first_line = 0;
  std::size_t motion_line = 0;

  bool empty() const { return first_line == 0; }
  PendingObject* current() {
    auto& side = motion ? outputs : inputs;
    return side.empty() ? nullptr : &side.back();
  }
};

class FoonTextReader {
public:
  explicit FoonTextReader(std::string_view file) : file_(file) {}

  std::vector<FunctionalUnit> read(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = trim(raw);
      if (line.empty())
        continue;
      if (line == kDelimiter) {
        finish_unit();
        continue;
      }
      record(line, line_no);
    }
    finish_unit();
    return std::move(units_);
  }

private:
  [[noreturn]] void fail(std::size_t line, ParseErrorKind kind, std::string message) const {
    throw ParseError(file_, line, kind, std::move(message));
  }

  void record(std::string_view line, std::size_t line_no) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      fail(line_no, ParseErrorKind::malformed_line, "expected '<tag>\\t<value>'");
    const auto tag = trim(line.substr(0, tab));
    const auto value = normalize_label(line.substr(tab + 1));
    if (tag.empty())
      fail(line_no, ParseErrorKind::malformed_line, "record has no tag");
    if (tag != "O" && tag != "S" && tag != "I" && tag != "M")
      fail(line_no, ParseErrorKind::unknown_record_tag, "unknown record tag '" + std::string(tag) + "'");
    if (value.empty() || value.find('\t') != std::string::npos)
      fail(line_no, ParseErrorKind::malformed_line, "record value is empty or contains a tab");

    if (unit_.empty())
      unit_.first_line = line_no;

    if (tag == "O") {
      auto& side = unit_.motion ? unit_.outputs : unit_.inputs;
      side.push_back(PendingObject{value, {}, {}, line_no});
    } else if (tag == "M") {
      if (unit_.motion)
        fail(line_no, ParseErrorKind::missing_motion, "unit has more than one motion record");
      unit_.motion = value;
      unit_.motion_line = line_no;
    } else {
      auto* obj = unit_.current();
      if (obj == nullptr)
        fail(line_no, ParseErrorKind::malformed_line, "state or ingredient record before any object");
      (tag == "S" ? obj->states : obj->ingredients).push_back(value);
    }
  }

  std::vector<ObjectNode> build_side(const std::vector<PendingObject>& side) const {
    std::vector<ObjectNode> nodes;
    nodes.reserve(side.size());
    for (const auto& p : side) {
      ObjectNode node(p.label, p.states, p.ingredients);
      if (std::find(nodes.begin(), nodes.end(), node) != nodes.end())
        fail(p.line, ParseErrorKind::malformed_line, "object '" + to_string(node) + "' repeated within unit");
      nodes.push_back(std::move(node));
    }
    return nodes;
  }

  void finish_unit() {
    if (unit_.empty())
      return;
    if (!unit_.motion)
      fail(unit_.first_line, ParseErrorKind::missing_motion, "unit has no motion record");
    if (unit_.inputs.empty())
      fail(unit_.motion_line, ParseErrorKind::empty_unit, "unit has no input objects");
    if (unit_.outputs.empty())
      fail(unit_.motion_line, ParseErrorKind::empty_unit, "unit has no output objects");
    auto inputs = build_side(unit_.inputs);
    auto outputs = build_side(unit_.outputs);
    units_.emplace_back(std::move(inputs), MotionNode(*unit_.motion), std::move(outputs));
    unit_ = PendingUnit{};
  }

  std::string file_;
  PendingUnit unit_;
  std::vector<FunctionalUnit> units_;
};

void write_object(std::ostream& out, const ObjectNode& node) {
  out << "O\t" << node.label() << '\n';
  for (const auto& s : node.states())
    out << "S\t" << s << '\n';
  for (const auto& i : node.ingredients())
    out << "I\t" << i << '\n';
}

// 1-based line of each top-level array element in a JSON text, so shape
// errors can point at the offending entry.
std::vector<std::size_t> array_element_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  bool expect_value = false;
  for (const char c : text) {
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '\n') {
      ++line;
      continue;
    }
    if (kWhitespace.find(c) != std::string_view::npos)
      continue;
    if (depth == 1) {
      if (c == ',') {
        expect_value = true;
        continue;
      }
      if (expect_value && c != ']') {
        lines.push_back(line);
        expect_value = false;
      }
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      if (depth == 0 && c == '[')
        expect_value = true;
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
    }
  }
  return lines;
}

std::size_t line_at_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::vector<std::string> string_list(const nlohmann::json& value, const char* key, const auto& fail) {
  if (!value.is_array())
    fail(std::string("'") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string() || normalize_label(item.get<std::string>()).empty())
      fail(std::string("'") + key + "' entries must be non-empty strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<ObjectNode> parse_object_array(std::istream& in, std::string_view file) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(file), line_at_byte(text, e.byte > 0 ? e.byte - 1 : 0),
                     ParseErrorKind::bad_json_shape, "invalid JSON");
  }
  if (!doc.is_array())
    throw ParseError(std::string(file), line_at_byte(text, text.find_first_not_of(kWhitespace)),
                     ParseErrorKind::bad_json_shape, "top-level value must be an array");

  const auto element_lines = array_element_lines(text);
  std::vector<ObjectNode> nodes;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto line = i < element_lines.size() ? element_lines[i] : 1;
    const auto fail = [&](const std::string& msg) {
      throw ParseError(std::string(file), line, ParseErrorKind::bad_json_shape,
                       "entry " + std::to_string(i) + ": " + msg);
    };
    const auto& entry = doc[i];
    if (!entry.is_object())
      fail("must be an object");
    for (const auto& [key, _] : entry.items())
      if (key != "label" && key != "states" && key != "ingredients")
        fail("unexpected key '" + key + "'");
    const auto label = entry.find("label");
    if (label == entry.end() || !label->is_string() || normalize_label(label->get<std::string>()).empty())
      fail("'label' must be a non-empty string");
    std::vector<std::string> states, ingredients;
    if (const auto it = entry.find("states"); it != entry.end())
      states = string_list(*it, "states", fail);
    if (const auto it = entry.find("ingredients"); it != entry.end())
      ingredients = string_list(*it, "ingredients", fail);
    nodes.emplace_back(label->get<std::string>(), states, ingredients);
  }
  return nodes;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::vector<FunctionalUnit> parse_functional_units(std::istream& in, std::string_view file) {
  return FoonTextReader(file).read(in);
}

Subgraph parse_subgraph(std::istream& in, std::string name, std::string_view file) {
  return Subgraph{std::move(name), parse_functional_units(in, file)};
}

UniversalFoon parse_universal_foon(std::istream& in, std::string_view file) {
  UniversalFoon foon;
  for (const auto& unit : parse_functional_units(in, file))
    foon.add(unit);
  return foon;
}

void write_functional_units(std::ostream& out, std::span<const FunctionalUnit> units) {
  if (units.empty())
    return;
  out << kDelimiter << '\n';
  for (const auto& unit : units) {
    for (const auto& node : unit.inputs())
      write_object(out, node);
    out << "M\t" << unit.motion().label() << '\n';
    for (const auto& node : unit.outputs())
      write_object(out, node);
    out << kDelimiter << '\n';
  }
}

std::string serialize_universal_foon(const UniversalFoon& foon) {
  std::ostringstream out;
  write_functional_units(out, foon.units());
  return out.str();
}

std::string serialize_task_tree(const TaskTree& tree) {
  std::ostringstream out;
  write_functional_units(out, tree.steps);
  return out.str();
}

SuccessRateTable parse_motion_rates(std::istream& in, std::string_view file) {
  SuccessRateTable table;
  std::string raw;
  std::size_t line_no = 0;
  const auto fail = [&](ParseErrorKind kind, std::string msg) {
    throw ParseError(std::string(file), line_no, kind, std::move(msg));
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty())
      continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      fail(ParseErrorKind::malformed_line, "expected '<motion>\\t<rate>'");
    const auto label = normalize_label(line.substr(0, tab));
    const auto number = trim(line.substr(tab + 1));
    if (label.empty() || number.empty())
      fail(ParseErrorKind::malformed_line, "expected '<motion>\\t<rate>'");
    double rate = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), rate);
    if (ec != std::errc{} || end != number.data() + number.size())
      fail(ParseErrorKind::malformed_line, "'" + std::string(number) + "' is not a decimal rate");
    if (!(rate >= 0.0 && rate <= 1.0))
      fail(ParseErrorKind::rate_out_of_range, "rate " + std::string(number) + " for '" + label + "' is outside [0, 1]");
    if (table.contains(label))
      fail(ParseErrorKind::duplicate_motion_rate, "motion '" + label + "' already has a rate");
    table.insert(label, rate);
  }
  return table;
}

std::string serialize_motion_rates(const SuccessRateTable& rates) {
  std::string out;
  for (const auto& [label, rate] : rates.entries()) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, rate);
    out += label;
    out += '\t';
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

Kitchen parse_kitchen(std::istream& in, std::string_view file) {
  return Kitchen(parse_object_array(in, file));
}

std::vector<ObjectNode> parse_goals(std::istream& in, std::string_view file) {
  return parse_object_array(in, file);
}

std::string serialize_object_nodes(std::span<const ObjectNode> nodes) {
  auto doc = nlohmann::json::array();
  for (const auto& node : nodes) {
    nlohmann::json entry{{"label", node.label()}};
    if (!node.states().empty())
      entry["states"] = node.states();
    if (!node.ingredients().empty())
      entry["ingredients"] = node.ingredients();
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string export_dot(std::span<const FunctionalUnit> units) {
  std::ostringstream out;
  std::map<ObjectNode, std::size_t> ids;
  std::ostringstream edges;

  out << "digraph foon {\n";
  const auto object_id = [&](const ObjectNode& node) {
    const auto [it, inserted] = ids.try_emplace(node, ids.size());
    if (inserted)
      out << "  o" << it->second << " [label=\"" << dot_escape(to_string(node))
          << "\", color=green, shape=ellipse];\n";
    return it->second;
  };
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto& unit = units[u];
    out << "  m" << u << " [label=\"" << dot_escape(unit.motion().label()) << "\", color=red, shape=box];\n";
    for (const auto& in : unit.inputs())
      edges << "  o" << object_id(in) << " -> m" << u << ";\n";
    for (const auto& o : unit.outputs())
      edges << "  m" << u << " -> o" << object_id(o) << ";\n";
  }
  out << edges.str() << "}\n";
  return out.str();
}

} // namespace foon
