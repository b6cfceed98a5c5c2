#pragma once

// Task-tree retrieval over a universal FOON.
//
// Every algorithm shares one skeleton: a frontier of object nodes seeded
// with the goal; each popped node is skipped if already searched, otherwise
// marked searched and, unless the kitchen has it, exactly one of its
// producing units is selected and the unit's inputs are pushed. Units are
// appended once. The appended list reversed gives dependency-first order.
//
// Algorithms differ only in frontier discipline and candidate selection:
//
//   bfs               FIFO, first producer in FOON order
//   dfs               LIFO, first producer in FOON order
//   ids               LIFO under depth limits 1, 2, ...; first producer whose
//                     inputs can all be made within the remaining depth
//   gbfs-max-success  FIFO, producer whose motion has the highest success rate
//   gbfs-min-inputs   FIFO, producer minimising inputs + their ingredients
//
// Heuristic ties go to the earlier unit. There is no backtracking across
// selections: a goal can be reported unsolvable even though a non-chosen
// alternative would have worked.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foon/model.hpp"

namespace foon {

enum class Algorithm { bfs, dfs, ids, gbfs_max_success, gbfs_min_inputs };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::bfs, Algorithm::dfs, Algorithm::ids,
                                               Algorithm::gbfs_max_success, Algorithm::gbfs_min_inputs};

/// The four algorithms compared by default: bfs, gbfs-max-success,
/// gbfs-min-inputs, ids.
inline constexpr Algorithm kTableAlgorithms[] = {Algorithm::bfs, Algorithm::gbfs_max_success,
                                                 Algorithm::gbfs_min_inputs, Algorithm::ids};

std::string_view to_string(Algorithm algorithm);
/// Throws std::invalid_argument for an unknown name.
Algorithm parse_algorithm(std::string_view name);

inline constexpr std::size_t kDefaultMaxDepth = 100;

struct RetrievalConfig {
  Algorithm algorithm = Algorithm::bfs;
  /// Depth in functional-unit hops from the goal. Ceiling for ids, safety
  /// bound for the others. nullopt means unlimited.
  std::optional<std::size_t> max_depth = kDefaultMaxDepth;
};

struct RetrievalOutcome {
  TaskTree tree;
  /// Object nodes taken off the frontier and expanded (skipped revisits are
  /// not counted). For ids, counts the final successful pass only.
  std::size_t expanded_nodes = 0;
  std::size_t selected_units = 0;
};

enum class RetrievalErrorKind { unsolvable_goal, missing_rate, depth_exhausted };

/// "UnsolvableGoal", "MissingRate", "DepthExhausted".
std::string_view to_string(RetrievalErrorKind kind);

class RetrievalError : public std::runtime_error {
public:
  RetrievalError(RetrievalErrorKind kind, const std::string& message);
  RetrievalErrorKind kind() const noexcept { return kind_; }

private:
  RetrievalErrorKind kind_;
};

/// Called at every selection point with the node being expanded, the
/// candidate unit indices (FOON order) and the chosen index.
using SelectionObserver =
    std::function<void(const ObjectNode& node, std::span<const std::size_t> candidates, std::size_t chosen)>;

/// Input objects plus the ingredients they contain.
std::size_t input_weight(const FunctionalUnit& unit);

/// Throws RetrievalError. Invalid configurations (max_depth == 0) throw
/// std::invalid_argument.
RetrievalOutcome retrieve(const UniversalFoon& foon, const Kitchen& kitchen, const ObjectNode& goal,
                          const SuccessRateTable& rates, const RetrievalConfig& config,
                          const SelectionObserver& observer = {});

/// True iff running the steps front to back, starting from the kitchen,
/// never needs an input that is not yet available.
bool validate_task_tree(const TaskTree& tree, const Kitchen& kitchen);

inline std::size_t count_units(const TaskTree& tree) { return tree.steps.size(); }

} // namespace foon
