#include "foon/model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace foon {

namespace {

std::set<std::string> normalized_set(const std::vector<std::string>& values, const char* what) {
  std::set<std::string> out;
  for (const auto& v : values) {
    auto n = normalize_label(v);
    if (n.empty())
      throw std::invalid_argument(std::string("empty ") + what);
    out.insert(std::move(n));
  }
  return out;
}

bool has_repeat(std::vector<ObjectNode> nodes) {
  std::sort(nodes.begin(), nodes.end());
  return std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end();
}

void append_joined(std::string& out, const std::set<std::string>& values) {
  bool first = true;
  for (const auto& v : values) {
    if (!first)
      out += ", ";
    out += v;
    first = false;
  }
}

} // namespace

std::string normalize_label(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos)
    return {};
  const auto end = text.find_last_not_of(ws);
  std::string out(text.substr(begin, end - begin + 1));
  for (auto& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

ObjectNode::ObjectNode(std::string_view label, const std::vector<std::string>& states,
                       const std::vector<std::string>& ingredients)
    : label_(normalize_label(label)), states_(normalized_set(states, "state")),
      ingredients_(normalized_set(ingredients, "ingredient")) {
  if (label_.empty())
    throw std::invalid_argument("object node label is empty");
}

std::string to_string(const ObjectNode& node) {
  std::string out = node.label();
  if (!node.states().empty()) {
    out += '{';
    append_joined(out, node.states());
    out += '}';
  }
  if (!node.ingredients().empty()) {
    out += '[';
    append_joined(out, node.ingredients());
    out += ']';
  }
  return out;
}

MotionNode::MotionNode(std::string_view label) : label_(normalize_label(label)) {
  if (label_.empty())
    throw std::invalid_argument("motion label is empty");
}

void SuccessRateTable::insert(std::string_view motion_label, double rate) {
  auto label = normalize_label(motion_label);
  if (label.empty())
    throw std::invalid_argument("motion label is empty");
  if (!(rate >= 0.0 && rate <= 1.0))
    throw std::invalid_argument("success rate for '" + label + "' is outside [0, 1]");
  if (!entries_.emplace(label, rate).second)
    throw std::invalid_argument("duplicate success rate for '" + label + "'");
}

std::optional<double> SuccessRateTable::rate(std::string_view motion_label) const {
  const auto it = entries_.find(normalize_label(motion_label));
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

bool SuccessRateTable::contains(std::string_view motion_label) const {
  return rate(motion_label).has_value();
}

FunctionalUnit::FunctionalUnit(std::vector<ObjectNode> inputs, MotionNode motion,
                               std::vector<ObjectNode> outputs)
    : inputs_(std::move(inputs)), motion_(std::move(motion)), outputs_(std::move(outputs)) {
  if (inputs_.empty())
    throw std::invalid_argument("functional unit '" + motion_.label() + "' has no inputs");
  if (outputs_.empty())
    throw std::invalid_argument("functional unit '" + motion_.label() + "' has no outputs");
  if (has_repeat(inputs_))
    throw std::invalid_argument("functional unit '" + motion_.label() + "' repeats an input");
  if (has_repeat(outputs_))
    throw std::invalid_argument("functional unit '" + motion_.label() + "' repeats an output");
}

bool FunctionalUnit::produces(const ObjectNode& node) const {
  return std::find(outputs_.begin(), outputs_.end(), node) != outputs_.end();
}

FunctionalUnit::Canonical FunctionalUnit::canonical() const {
  Canonical c{inputs_, motion_.label(), outputs_};
  std::sort(c.inputs.begin(), c.inputs.end());
  std::sort(c.outputs.begin(), c.outputs.end());
  return c;
}

bool UniversalFoon::add(const FunctionalUnit& unit) {
  if (!seen_.insert(unit.canonical()).second)
    return false;
  const auto index = units_.size();
  units_.push_back(unit);
  for (const auto& out : unit.outputs())
    producer_index_[out].push_back(index);
  return true;
}

std::span<const std::size_t> UniversalFoon::producer_indices(const ObjectNode& node) const {
  const auto it = producer_index_.find(node);
  if (it == producer_index_.end())
    return {};
  return it->second;
}

std::set<ObjectNode> UniversalFoon::object_nodes() const {
  std::set<ObjectNode> nodes;
  for (const auto& u : units_) {
    nodes.insert(u.inputs().begin(), u.inputs().end());
    nodes.insert(u.outputs().begin(), u.outputs().end());
  }
  return nodes;
}

UniversalFoon merge_subgraph(UniversalFoon foon, const Subgraph& sub) {
  for (const auto& unit : sub.units)
    foon.add(unit);
  return foon;
}

std::vector<FunctionalUnit> producers_of(const UniversalFoon& foon, const ObjectNode& node) {
  std::vector<FunctionalUnit> out;
  for (const auto i : foon.producer_indices(node))
    out.push_back(foon.units()[i]);
  return out;
}

Kitchen::Kitchen(const std::vector<ObjectNode>& items) : items_(items.begin(), items.end()) {}

bool node_available(const Kitchen& kitchen, const ObjectNode& node) {
  return kitchen.contains(node);
}

bool TaskTree::contains(const FunctionalUnit& unit) const {
  return std::find(steps.begin(), steps.end(), unit) != steps.end();
}

} // namespace foon
