#include "foon/retrieval.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace foon {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
  case Algorithm::bfs: return "bfs";
  case Algorithm::dfs: return "dfs";
  case Algorithm::ids: return "ids";
  case Algorithm::gbfs_max_success: return "gbfs-max-success";
  case Algorithm::gbfs_min_inputs: return "gbfs-min-inputs";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto a : kAllAlgorithms)
    if (to_string(a) == name)
      return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected bfs, dfs, ids, gbfs-max-success or gbfs-min-inputs)");
}

std::string_view to_string(RetrievalErrorKind kind) {
  switch (kind) {
  case RetrievalErrorKind::unsolvable_goal: return "UnsolvableGoal";
  case RetrievalErrorKind::missing_rate: return "MissingRate";
  case RetrievalErrorKind::depth_exhausted: return "DepthExhausted";
  }
  return "RetrievalError";
}

RetrievalError::RetrievalError(RetrievalErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

std::size_t input_weight(const FunctionalUnit& unit) {
  std::size_t weight = unit.inputs().size();
  for (const auto& in : unit.inputs())
    weight += in.ingredients().size();
  return weight;
}

namespace {

[[noreturn]] void unsolvable(const ObjectNode& node) {
  throw RetrievalError(RetrievalErrorKind::unsolvable_goal,
                       "'" + to_string(node) + "' is not in the kitchen and no unit produces it");
}

// Bounded AND-OR reachability: can `node` be made from the kitchen using at
// most `budget` unit hops?
class DepthProbe {
public:
  enum class Result { solved, cutoff, failed };

  DepthProbe(const UniversalFoon& foon, const Kitchen& kitchen) : foon_(foon), kitchen_(kitchen) {}

  Result solve(const ObjectNode& node, std::size_t budget) {
    if (kitchen_.contains(node))
      return Result::solved;
    const auto producers = foon_.producer_indices(node);
    if (producers.empty())
      return Result::failed;
    if (budget == 0)
      return Result::cutoff;
    if (const auto it = memo_.find({node, budget}); it != memo_.end())
      return it->second;

    auto result = Result::failed;
    for (const auto u : producers) {
      const auto unit_result = solve_unit(foon_.units()[u], budget - 1);
      if (unit_result == Result::solved) {
        result = Result::solved;
        break;
      }
      if (unit_result == Result::cutoff)
        result = Result::cutoff;
    }
    memo_.emplace(std::pair{node, budget}, result);
    return result;
  }

  Result solve_unit(const FunctionalUnit& unit, std::size_t budget) {
    auto result = Result::solved;
    for (const auto& in : unit.inputs()) {
      const auto r = solve(in, budget);
      if (r == Result::failed)
        return Result::failed;
      if (r == Result::cutoff)
        result = Result::cutoff;
    }
    return result;
  }

private:
  const UniversalFoon& foon_;
  const Kitchen& kitchen_;
  std::map<std::pair<ObjectNode, std::size_t>, Result> memo_;
};

class Retriever {
public:
  Retriever(const UniversalFoon& foon, const Kitchen& kitchen, const SuccessRateTable& rates,
            const RetrievalConfig& config, const SelectionObserver& observer)
      : foon_(foon), kitchen_(kitchen), rates_(rates), config_(config), observer_(observer) {}

  // `depth_limit` and `probe` are set only for an ids pass.
  RetrievalOutcome run(const ObjectNode& goal, std::optional<std::size_t> depth_limit = std::nullopt,
                       DepthProbe* probe = nullptr) {
    struct Frame {
      const ObjectNode* node;
      std::size_t depth;
    };
    const bool lifo = config_.algorithm == Algorithm::dfs || config_.algorithm == Algorithm::ids;

    std::deque<Frame> frontier{{&goal, 0}};
    std::set<ObjectNode> searched;
    std::map<ObjectNode, std::size_t> chosen_for;
    std::vector<std::size_t> appended;
    std::set<std::size_t> in_tree;
    RetrievalOutcome outcome;

    while (!frontier.empty()) {
      Frame frame;
      if (lifo) {
        frame = frontier.back();
        frontier.pop_back();
      } else {
        frame = frontier.front();
        frontier.pop_front();
      }
      const auto& node = *frame.node;
      if (!searched.insert(node).second)
        continue;
      ++outcome.expanded_nodes;
      if (kitchen_.contains(node))
        continue;

      const auto candidates = foon_.producer_indices(node);
      if (candidates.empty())
        unsolvable(node);
      if (!depth_limit && config_.max_depth && frame.depth + 1 > *config_.max_depth)
        throw RetrievalError(RetrievalErrorKind::depth_exhausted,
                             "producing '" + to_string(node) + "' needs more than " +
                                 std::to_string(*config_.max_depth) + " unit hops");

      const auto chosen = depth_limit ? select_within(candidates, *depth_limit - frame.depth - 1, *probe)
                                      : select(candidates);
      if (observer_)
        observer_(node, candidates, chosen);
      chosen_for.emplace(node, chosen);
      if (!in_tree.insert(chosen).second)
        continue;
      appended.push_back(chosen);

      const auto& inputs = foon_.units()[chosen].inputs();
      if (lifo) {
        for (auto it = inputs.rbegin(); it != inputs.rend(); ++it)
          frontier.push_back({&*it, frame.depth + 1});
      } else {
        for (const auto& in : inputs)
          frontier.push_back({&in, frame.depth + 1});
      }
    }

    std::reverse(appended.begin(), appended.end());
    for (const auto u : order_by_dependencies(appended, chosen_for))
      outcome.tree.steps.push_back(foon_.units()[u]);
    outcome.selected_units = outcome.tree.steps.size();
    return outcome;
  }

private:
  std::size_t select(std::span<const std::size_t> candidates) const {
    switch (config_.algorithm) {
    case Algorithm::gbfs_max_success: {
      std::size_t best = candidates.front();
      double best_rate = -1.0;
      for (const auto u : candidates) {
        const auto& motion = foon_.units()[u].motion().label();
        const auto rate = rates_.rate(motion);
        if (!rate)
          throw RetrievalError(RetrievalErrorKind::missing_rate, "motion '" + motion + "' has no success rate");
        if (*rate > best_rate) {
          best = u;
          best_rate = *rate;
        }
      }
      return best;
    }
    case Algorithm::gbfs_min_inputs: {
      std::size_t best = candidates.front();
      auto best_weight = std::numeric_limits<std::size_t>::max();
      for (const auto u : candidates) {
        const auto weight = input_weight(foon_.units()[u]);
        if (weight < best_weight) {
          best = u;
          best_weight = weight;
        }
      }
      return best;
    }
    default:
      return candidates.front();
    }
  }

  std::size_t select_within(std::span<const std::size_t> candidates, std::size_t budget, DepthProbe& probe) const {
    for (const auto u : candidates)
      if (probe.solve_unit(foon_.units()[u], budget) == DepthProbe::Result::solved)
        return u;
    // Every frame pushed in an ids pass was checked to fit its budget.
    throw std::logic_error("depth-limited pass reached a node it cannot produce");
  }

  // Stable topological order of `units` (indices into the FOON) where a unit
  // follows the producers chosen for its inputs. Keeps the given order
  // whenever it is already executable.
  std::vector<std::size_t> order_by_dependencies(const std::vector<std::size_t>& units,
                                                 const std::map<ObjectNode, std::size_t>& chosen_for) const {
    std::map<std::size_t, std::size_t> position;
    for (std::size_t p = 0; p < units.size(); ++p)
      position.emplace(units[p], p);

    std::vector<std::vector<std::size_t>> dependents(units.size());
    std::vector<std::size_t> pending(units.size(), 0);
    for (std::size_t p = 0; p < units.size(); ++p) {
      std::set<std::size_t> deps;
      for (const auto& in : foon_.units()[units[p]].inputs()) {
        if (kitchen_.contains(in))
          continue;
        deps.insert(position.at(chosen_for.at(in)));
      }
      pending[p] = deps.size();
      for (const auto q : deps)
        dependents[q].push_back(p);
    }

    std::set<std::size_t> ready;
    for (std::size_t p = 0; p < units.size(); ++p)
      if (pending[p] == 0)
        ready.insert(p);
    std::vector<std::size_t> ordered;
    while (!ready.empty()) {
      const auto p = *ready.begin();
      ready.erase(ready.begin());
      ordered.push_back(units[p]);
      for (const auto d : dependents[p])
        if (--pending[d] == 0)
          ready.insert(d);
    }
    if (ordered.size() != units.size())
      throw RetrievalError(RetrievalErrorKind::unsolvable_goal,
                           "the selected units depend on each other in a cycle");
    return ordered;
  }

  const UniversalFoon& foon_;
  const Kitchen& kitchen_;
  const SuccessRateTable& rates_;
  const RetrievalConfig& config_;
  const SelectionObserver& observer_;
};

RetrievalOutcome iterative_deepening(Retriever& retriever, const UniversalFoon& foon, const Kitchen& kitchen,
                                     const ObjectNode& goal, const RetrievalConfig& config) {
  if (kitchen.contains(goal))
    return retriever.run(goal);

  // A solvable node never needs more hops than there are distinct nodes.
  const auto node_bound = foon.object_nodes().size() + 1;
  const auto ceiling = config.max_depth.value_or(std::numeric_limits<std::size_t>::max());
  DepthProbe probe(foon, kitchen);
  for (std::size_t limit = 1;; ++limit) {
    const auto result = probe.solve(goal, limit);
    if (result == DepthProbe::Result::solved)
      return retriever.run(goal, limit, &probe);
    if (result == DepthProbe::Result::failed || limit >= node_bound)
      unsolvable(goal);
    if (limit >= ceiling)
      throw RetrievalError(RetrievalErrorKind::depth_exhausted,
                           "'" + to_string(goal) + "' cannot be produced within " + std::to_string(ceiling) +
                               " unit hops");
  }
}

} // namespace

RetrievalOutcome retrieve(const UniversalFoon& foon, const Kitchen& kitchen, const ObjectNode& goal,
                          const SuccessRateTable& rates, const RetrievalConfig& config,
                          const SelectionObserver& observer) {
  if (config.max_depth && *config.max_depth == 0)
    throw std::invalid_argument("max_depth must be at least 1");
  Retriever retriever(foon, kitchen, rates, config, observer);
  if (config.algorithm == Algorithm::ids)
    return iterative_deepening(retriever, foon, kitchen, goal, config);
  return retriever.run(goal);
}

bool validate_task_tree(const TaskTree& tree, const Kitchen& kitchen) {
  std::set<ObjectNode> available(kitchen.items().begin(), kitchen.items().end());
  for (const auto& step : tree.steps) {
    for (const auto& in : step.inputs())
      if (!available.contains(in))
        return false;
    available.insert(step.outputs().begin(), step.outputs().end());
  }
  return true;
}

} // namespace foon
