#pragma once

// Core FOON types: object nodes, motion nodes, functional units and the
// merged universal network with its producer index.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace foon {

/// Lowercases ASCII letters and strips leading/trailing whitespace.
std::string normalize_label(std::string_view text);

/// An object with a label, a set of states and a set of contained
/// ingredients. All three parts take part in identity.
class ObjectNode {
public:
  ObjectNode() = delete;
  explicit ObjectNode(std::string_view label,
                      const std::vector<std::string>& states = {},
                      const std::vector<std::string>& ingredients = {});

  const std::string& label() const noexcept { return label_; }
  const std::set<std::string>& states() const noexcept { return states_; }
  const std::set<std::string>& ingredients() const noexcept { return ingredients_; }

  friend bool operator==(const ObjectNode&, const ObjectNode&) = default;
  friend auto operator<=>(const ObjectNode&, const ObjectNode&) = default;

private:
  std::string label_;
  std::set<std::string> states_;
  std::set<std::string> ingredients_;
};

/// Human-readable form, e.g. `bowl{mixed}[milk, sugar]`.
std::string to_string(const ObjectNode& node);

class MotionNode {
public:
  MotionNode() = delete;
  explicit MotionNode(std::string_view label);

  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const MotionNode&, const MotionNode&) = default;
  friend auto operator<=>(const MotionNode&, const MotionNode&) = default;

private:
  std::string label_;
};

/// Motion label -> success rate in [0, 1].
class SuccessRateTable {
public:
  /// Throws std::invalid_argument on a duplicate label or a rate outside [0, 1].
  void insert(std::string_view motion_label, double rate);

  std::optional<double> rate(std::string_view motion_label) const;
  bool contains(std::string_view motion_label) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, double, std::less<>>& entries() const noexcept { return entries_; }

private:
  std::map<std::string, double, std::less<>> entries_;
};

/// One step of a recipe: inputs are consumed by the motion to yield outputs.
/// Equality ignores the order of inputs and outputs.
class FunctionalUnit {
public:
  /// Throws std::invalid_argument if inputs or outputs are empty or contain
  /// a repeated node.
  FunctionalUnit(std::vector<ObjectNode> inputs, MotionNode motion, std::vector<ObjectNode> outputs);

  const std::vector<ObjectNode>& inputs() const noexcept { return inputs_; }
  const MotionNode& motion() const noexcept { return motion_; }
  const std::vector<ObjectNode>& outputs() const noexcept { return outputs_; }

  bool produces(const ObjectNode& node) const;

  /// Inputs and outputs sorted; two units are equal iff their canonical
  /// forms are equal.
  struct Canonical {
    std::vector<ObjectNode> inputs;
    std::string motion;
    std::vector<ObjectNode> outputs;
    friend auto operator<=>(const Canonical&, const Canonical&) = default;
    friend bool operator==(const Canonical&, const Canonical&) = default;
  };
  Canonical canonical() const;

  friend bool operator==(const FunctionalUnit& a, const FunctionalUnit& b) {
    return a.canonical() == b.canonical();
  }

private:
  std::vector<ObjectNode> inputs_;
  MotionNode motion_;
  std::vector<ObjectNode> outputs_;
};

/// The FOON of a single recipe.
struct Subgraph {
  std::string name;
  std::vector<FunctionalUnit> units;
};

/// Deduplicated union of subgraphs. Units keep first-insertion order and
/// every output node is indexed to the units producing it.
class UniversalFoon {
public:
  UniversalFoon() = default;

  /// Appends `unit` unless an equal unit is already present. Returns true
  /// when the unit was new.
  bool add(const FunctionalUnit& unit);

  const std::vector<FunctionalUnit>& units() const noexcept { return units_; }
  std::size_t size() const noexcept { return units_.size(); }
  bool empty() const noexcept { return units_.empty(); }

  /// Indices into units() of the producers of `node`, in insertion order.
  std::span<const std::size_t> producer_indices(const ObjectNode& node) const;

  const std::map<ObjectNode, std::vector<std::size_t>>& producer_index() const noexcept {
    return producer_index_;
  }

  /// Every distinct object node mentioned by any unit.
  std::set<ObjectNode> object_nodes() const;

private:
  std::vector<FunctionalUnit> units_;
  std::map<ObjectNode, std::vector<std::size_t>> producer_index_;
  std::set<FunctionalUnit::Canonical> seen_;
};

UniversalFoon merge_subgraph(UniversalFoon foon, const Subgraph& sub);

std::vector<FunctionalUnit> producers_of(const UniversalFoon& foon, const ObjectNode& node);

/// Items available before any action is taken.
class Kitchen {
public:
  Kitchen() = default;
  explicit Kitchen(const std::vector<ObjectNode>& items);

  /// Returns false if an equal node was already present.
  bool add(const ObjectNode& node) { return items_.insert(node).second; }
  bool contains(const ObjectNode& node) const { return items_.contains(node); }
  std::size_t size() const noexcept { return items_.size(); }
  const std::set<ObjectNode>& items() const noexcept { return items_; }

private:
  std::set<ObjectNode> items_;
};

/// Exact match on label, state set and ingredient set.
bool node_available(const Kitchen& kitchen, const ObjectNode& node);

/// Ordered, duplicate-free sequence of units, executable front to back.
struct TaskTree {
  std::vector<FunctionalUnit> steps;

  bool contains(const FunctionalUnit& unit) const;
  friend bool operator==(const TaskTree&, const TaskTree&) = default;
};

} // namespace foon
