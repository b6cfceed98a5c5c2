#include <doctest.h>

#include <set>

#include "foon/generate.hpp"
#include "foon/retrieval.hpp"
#include "support/fixtures.hpp"

using namespace foon;
using namespace foon::testing;

namespace {

FunctionalUnit U(std::vector<std::string> in, const std::string& motion, std::vector<std::string> out) {
  std::vector<ObjectNode> inputs, outputs;
  for (const auto& l : in)
    inputs.emplace_back(l);
  for (const auto& l : out)
    outputs.emplace_back(l);
  return FunctionalUnit(inputs, MotionNode(motion), outputs);
}

UniversalFoon foon_of(const std::vector<FunctionalUnit>& units) {
  UniversalFoon f;
  for (const auto& u : units)
    f.add(u);
  return f;
}

Kitchen kitchen_of(const std::vector<std::string>& labels) {
  Kitchen k;
  for (const auto& l : labels)
    k.add(ObjectNode(l));
  return k;
}

SuccessRateTable uniform_rates(const UniversalFoon& foon, double rate = 0.5) {
  SuccessRateTable t;
  for (const auto& u : foon.units())
    if (!t.contains(u.motion().label()))
      t.insert(u.motion().label(), rate);
  return t;
}

RetrievalOutcome run(const UniversalFoon& foon, const Kitchen& kitchen, const ObjectNode& goal,
                     const SuccessRateTable& rates, Algorithm a, std::optional<std::size_t> depth = kDefaultMaxDepth,
                     const SelectionObserver& obs = {}) {
  return retrieve(foon, kitchen, goal, rates, RetrievalConfig{a, depth}, obs);
}

RetrievalErrorKind error_of(const UniversalFoon& foon, const Kitchen& kitchen, const ObjectNode& goal,
                            const SuccessRateTable& rates, Algorithm a,
                            std::optional<std::size_t> depth = kDefaultMaxDepth) {
  try {
    run(foon, kitchen, goal, rates, a, depth);
  } catch (const RetrievalError& e) {
    return e.kind();
  }
  FAIL("expected a RetrievalError for " << to_string(a));
  throw std::logic_error("unreachable");
}

std::set<FunctionalUnit::Canonical> step_set(const TaskTree& t) {
  std::set<FunctionalUnit::Canonical> s;
  for (const auto& u : t.steps)
    s.insert(u.canonical());
  return s;
}

bool pairwise_distinct(const TaskTree& t) { return step_set(t).size() == t.steps.size(); }

// Candidate scan oracles: check a selection against every producer.
void check_max_success_choice(const UniversalFoon& foon, const SuccessRateTable& rates,
                              std::span<const std::size_t> candidates, std::size_t chosen) {
  const auto chosen_rate = *rates.rate(foon.units()[chosen].motion().label());
  for (const auto c : candidates) {
    const auto r = *rates.rate(foon.units()[c].motion().label());
    CHECK(chosen_rate >= r);
    if (c < chosen)
      CHECK(r < chosen_rate); // earlier candidates must be strictly worse
  }
}

void check_min_inputs_choice(const UniversalFoon& foon, std::span<const std::size_t> candidates, std::size_t chosen) {
  const auto chosen_weight = input_weight(foon.units()[chosen]);
  for (const auto c : candidates) {
    const auto& unit = foon.units()[c];
    std::size_t weight = unit.inputs().size();
    for (const auto& in : unit.inputs())
      weight += in.ingredients().size();
    CHECK(chosen_weight <= weight);
    if (c < chosen)
      CHECK(weight > chosen_weight);
  }
}

} // namespace

TEST_SUITE("retrieval") {

TEST_CASE("algorithm names") {
  for (const auto a : kAllAlgorithms)
    CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS_AS(parse_algorithm("astar"), std::invalid_argument);
}

TEST_CASE("sweet potato: every algorithm returns peel, pick and place, cut") {
  const auto foon = merge_subgraph({}, sweet_potato_subgraph());
  const auto kitchen = sweet_potato_kitchen();
  const auto rates = sweet_potato_rates();
  const TaskTree expected{{peel_unit(), place_unit(), cut_unit()}};
  for (const auto a : kAllAlgorithms) {
    CAPTURE(to_string(a));
    const auto out = run(foon, kitchen, sp_chopped(), rates, a);
    CHECK(out.tree == expected);
    CHECK(out.selected_units == 3);
    CHECK(count_units(out.tree) == 3);
    CHECK(validate_task_tree(out.tree, kitchen));
    CHECK(out.expanded_nodes <= foon.object_nodes().size());
  }
}

TEST_CASE("goal already in the kitchen gives an empty tree") {
  const auto foon = merge_subgraph({}, sweet_potato_subgraph());
  for (const auto a : kAllAlgorithms) {
    const auto out = run(foon, sweet_potato_kitchen(), knife(), sweet_potato_rates(), a);
    CHECK(out.tree.steps.empty());
    CHECK(out.selected_units == 0);
  }
}

TEST_CASE("onion: max-success picks the slicer, min-inputs picks the two-input unit") {
  const ObjectNode whole("onion", {"whole"});
  const ObjectNode chopped("onion", {"chopped"});
  const FunctionalUnit knife_unit({whole, knife(), board(), ObjectNode("bowl")}, MotionNode("cut with knife"),
                                  {chopped});
  const FunctionalUnit slicer_unit({whole, ObjectNode("slicer")}, MotionNode("cut with slicer"), {chopped});
  const auto foon = foon_of({knife_unit, slicer_unit});
  const Kitchen kitchen({whole, knife(), board(), ObjectNode("bowl"), ObjectNode("slicer")});
  SuccessRateTable rates;
  rates.insert("cut with knife", 0.4);
  rates.insert("cut with slicer", 0.9);

  CHECK(run(foon, kitchen, chopped, rates, Algorithm::gbfs_max_success).tree.steps ==
        std::vector<FunctionalUnit>{slicer_unit});
  CHECK(run(foon, kitchen, chopped, rates, Algorithm::gbfs_min_inputs).tree.steps ==
        std::vector<FunctionalUnit>{slicer_unit});
  CHECK(run(foon, kitchen, chopped, rates, Algorithm::bfs).tree.steps == std::vector<FunctionalUnit>{knife_unit});

  SUBCASE("rates reversed flips the max-success choice only") {
    SuccessRateTable flipped;
    flipped.insert("cut with knife", 0.9);
    flipped.insert("cut with slicer", 0.4);
    CHECK(run(foon, kitchen, chopped, flipped, Algorithm::gbfs_max_success).tree.steps ==
          std::vector<FunctionalUnit>{knife_unit});
    CHECK(run(foon, kitchen, chopped, flipped, Algorithm::gbfs_min_inputs).tree.steps ==
          std::vector<FunctionalUnit>{slicer_unit});
  }
  SUBCASE("ties go to the earlier unit") {
    SuccessRateTable tied;
    tied.insert("cut with knife", 0.7);
    tied.insert("cut with slicer", 0.7);
    CHECK(run(foon, kitchen, chopped, tied, Algorithm::gbfs_max_success).tree.steps ==
          std::vector<FunctionalUnit>{knife_unit});
    const FunctionalUnit other({whole, ObjectNode("mandoline")}, MotionNode("cut with slicer"), {chopped});
    const auto two = foon_of({slicer_unit, other});
    Kitchen k2 = kitchen;
    k2.add(ObjectNode("mandoline"));
    CHECK(run(two, k2, chopped, tied, Algorithm::gbfs_min_inputs).tree.steps == std::vector<FunctionalUnit>{slicer_unit});
  }
}

TEST_CASE("min-inputs counts ingredients of input objects") {
  const ObjectNode goal("soup");
  const FunctionalUnit full_pot({ObjectNode("pot", {}, {"carrot", "leek", "water"})}, MotionNode("simmer"), {goal});
  const FunctionalUnit two_items({ObjectNode("broth"), ObjectNode("pot")}, MotionNode("heat"), {goal});
  const auto foon = foon_of({full_pot, two_items});
  const Kitchen kitchen({ObjectNode("pot", {}, {"carrot", "leek", "water"}), ObjectNode("broth"), ObjectNode("pot")});
  CHECK(input_weight(full_pot) == 4);
  CHECK(input_weight(two_items) == 2);
  CHECK(run(foon, kitchen, goal, uniform_rates(foon), Algorithm::gbfs_min_inputs).tree.steps ==
        std::vector<FunctionalUnit>{two_items});
}

TEST_CASE("errors") {
  const auto foon = merge_subgraph({}, sweet_potato_subgraph());
  const auto kitchen = sweet_potato_kitchen();
  const auto rates = sweet_potato_rates();

  SUBCASE("goal with no producers") {
    for (const auto a : kAllAlgorithms)
      CHECK(error_of(foon, kitchen, ObjectNode("ice"), rates, a) == RetrievalErrorKind::unsolvable_goal);
  }
  SUBCASE("missing leaf ingredient") {
    const Kitchen no_potato({knife(), board()});
    for (const auto a : kAllAlgorithms)
      CHECK(error_of(foon, no_potato, sp_chopped(), rates, a) == RetrievalErrorKind::unsolvable_goal);
  }
  SUBCASE("missing rate only matters to max-success") {
    SuccessRateTable partial;
    partial.insert("peel", 0.9);
    partial.insert("cut", 0.7);
    CHECK(error_of(foon, kitchen, sp_chopped(), partial, Algorithm::gbfs_max_success) ==
          RetrievalErrorKind::missing_rate);
    CHECK_NOTHROW(run(foon, kitchen, sp_chopped(), partial, Algorithm::gbfs_min_inputs));
    CHECK_NOTHROW(run(foon, kitchen, sp_chopped(), partial, Algorithm::bfs));
  }
  SUBCASE("ids depth ceiling") {
    CHECK(error_of(foon, kitchen, sp_chopped(), rates, Algorithm::ids, 1) == RetrievalErrorKind::depth_exhausted);
    CHECK(error_of(foon, kitchen, sp_chopped(), rates, Algorithm::ids, 2) == RetrievalErrorKind::depth_exhausted);
    CHECK(run(foon, kitchen, sp_chopped(), rates, Algorithm::ids, 3).selected_units == 3);
    CHECK(run(foon, kitchen, sp_chopped(), rates, Algorithm::ids, std::nullopt).selected_units == 3);
  }
  SUBCASE("depth bound applies to the other algorithms too") {
    CHECK(error_of(foon, kitchen, sp_chopped(), rates, Algorithm::bfs, 2) == RetrievalErrorKind::depth_exhausted);
    CHECK(run(foon, kitchen, sp_chopped(), rates, Algorithm::dfs, 3).selected_units == 3);
  }
  SUBCASE("zero depth is rejected") {
    CHECK_THROWS_AS(run(foon, kitchen, sp_chopped(), rates, Algorithm::bfs, 0), std::invalid_argument);
  }
  SUBCASE("error messages name the error") {
    try {
      run(foon, kitchen, ObjectNode("ice"), rates, Algorithm::bfs);
      FAIL("expected throw");
    } catch (const RetrievalError& e) {
      CHECK(std::string(e.what()).starts_with("UnsolvableGoal: "));
    }
  }
}

TEST_CASE("no backtracking: first producer with a dead end is reported unsolvable") {
  // "dough" has two producers; the first needs "yeast", which nothing makes.
  const auto foon = foon_of({U({"flour", "yeast"}, "knead", {"dough"}), U({"flour", "water"}, "mix", {"dough"}),
                             U({"dough", "oven"}, "bake", {"bread"})});
  const auto kitchen = kitchen_of({"flour", "water", "oven"});
  const auto rates = uniform_rates(foon);
  CHECK(error_of(foon, kitchen, ObjectNode("bread"), rates, Algorithm::bfs) == RetrievalErrorKind::unsolvable_goal);
  CHECK(error_of(foon, kitchen, ObjectNode("bread"), rates, Algorithm::dfs) == RetrievalErrorKind::unsolvable_goal);
  // the depth probe only accepts producers it can finish
  const auto ids = run(foon, kitchen, ObjectNode("bread"), rates, Algorithm::ids);
  CHECK(ids.selected_units == 2);
  CHECK(validate_task_tree(ids.tree, kitchen));
}

TEST_CASE("ids prefers the shallowest producer") {
  // "sauce" made either through a three-step chain (listed first) or directly.
  const auto foon = foon_of({U({"tomato puree"}, "season", {"sauce"}), U({"tomato paste", "water"}, "thin", {"tomato puree"}),
                             U({"tomato"}, "reduce", {"tomato paste"}), U({"tomato", "pan"}, "cook down", {"sauce"}),
                             U({"sauce", "pasta"}, "toss", {"dinner"})});
  const auto kitchen = kitchen_of({"tomato", "water", "pan", "pasta"});
  const auto rates = uniform_rates(foon);
  CHECK(run(foon, kitchen, ObjectNode("dinner"), rates, Algorithm::bfs).selected_units == 4);
  CHECK(run(foon, kitchen, ObjectNode("dinner"), rates, Algorithm::dfs).selected_units == 4);
  const auto ids = run(foon, kitchen, ObjectNode("dinner"), rates, Algorithm::ids);
  CHECK(ids.selected_units == 2);
  CHECK(ids.tree.steps.front().motion().label() == "cook down");
}

TEST_CASE("shared dependencies reached at different depths still execute in order") {
  // Under bfs, plain reversal of the selection order would put "whisk"
  // before "crack", whose output it needs.
  const auto foon = foon_of({U({"batter", "cracked eggs"}, "fold", {"cake mix"}), U({"whisked eggs", "flour"}, "stir", {"batter"}),
                             U({"eggs", "bowl"}, "crack", {"cracked eggs"}), U({"cracked eggs", "whisk"}, "whisk", {"whisked eggs"})});
  const auto kitchen = kitchen_of({"flour", "eggs", "bowl", "whisk"});
  const auto rates = uniform_rates(foon);
  for (const auto a : kAllAlgorithms) {
    CAPTURE(to_string(a));
    const auto out = run(foon, kitchen, ObjectNode("cake mix"), rates, a);
    CHECK(out.selected_units == 4);
    CHECK(validate_task_tree(out.tree, kitchen));
    CHECK(out.tree.steps.back().motion().label() == "fold");
  }
}

TEST_CASE("cyclic FOONs terminate") {
  SUBCASE("pure cycle is unsolvable") {
    const auto foon = foon_of({U({"b"}, "m1", {"a"}), U({"a"}, "m2", {"b"})});
    for (const auto a : kAllAlgorithms)
      CHECK(error_of(foon, Kitchen{}, ObjectNode("a"), uniform_rates(foon), a, std::nullopt) ==
            RetrievalErrorKind::unsolvable_goal);
  }
  SUBCASE("cycle with a way out") {
    // "a" <- "b" and "b" <- "a" (first) or "b" <- "seed" (second, fewer inputs)
    const auto foon = foon_of({U({"b", "tool"}, "m1", {"a"}), U({"a", "tool"}, "m2", {"b"}), U({"seed"}, "m3", {"b"})});
    const auto kitchen = kitchen_of({"tool", "seed"});
    const auto rates = uniform_rates(foon);
    CHECK(error_of(foon, kitchen, ObjectNode("a"), rates, Algorithm::bfs) == RetrievalErrorKind::unsolvable_goal);
    for (const auto a : {Algorithm::gbfs_min_inputs, Algorithm::ids}) {
      const auto out = run(foon, kitchen, ObjectNode("a"), rates, a);
      CHECK(out.selected_units == 2);
      CHECK(validate_task_tree(out.tree, kitchen));
      CHECK(out.expanded_nodes <= foon.object_nodes().size());
    }
  }
  SUBCASE("self loop") {
    const auto foon = foon_of({U({"dough", "hands"}, "knead", {"dough", "crumbs"})});
    CHECK(error_of(foon, kitchen_of({"hands"}), ObjectNode("crumbs"), uniform_rates(foon), Algorithm::bfs) ==
          RetrievalErrorKind::unsolvable_goal);
  }
}

TEST_CASE("chain FOONs: every algorithm returns the same tree") {
  for (std::size_t length = 1; length <= 6; ++length) {
    std::vector<FunctionalUnit> units;
    for (std::size_t i = 0; i < length; ++i)
      units.push_back(U({"stage" + std::to_string(i), "tool" + std::to_string(i)}, "step" + std::to_string(i),
                        {"stage" + std::to_string(i + 1)}));
    const auto foon = foon_of(units);
    Kitchen kitchen = kitchen_of({"stage0"});
    for (std::size_t i = 0; i < length; ++i)
      kitchen.add(ObjectNode("tool" + std::to_string(i)));
    const ObjectNode goal("stage" + std::to_string(length));
    const auto reference = run(foon, kitchen, goal, uniform_rates(foon), Algorithm::bfs);
    CHECK(reference.tree.steps == units);
    for (const auto a : kAllAlgorithms)
      CHECK(run(foon, kitchen, goal, uniform_rates(foon), a).tree == reference.tree);
  }
}

TEST_CASE("validate_task_tree") {
  const auto kitchen = sweet_potato_kitchen();
  CHECK(validate_task_tree(TaskTree{{peel_unit(), place_unit(), cut_unit()}}, kitchen));
  CHECK_FALSE(validate_task_tree(TaskTree{{place_unit(), cut_unit()}}, kitchen));
  CHECK_FALSE(validate_task_tree(TaskTree{{place_unit(), peel_unit(), cut_unit()}}, kitchen));
  CHECK(validate_task_tree(TaskTree{}, kitchen));
  CHECK(validate_task_tree(TaskTree{}, Kitchen{}));
  CHECK(count_units(TaskTree{}) == 0);
  CHECK(count_units(TaskTree{{peel_unit()}}) == 1);
}

TEST_CASE("generated fixtures: soundness, determinism and greedy optimality") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto fx = generate_fixture({25 + seed % 20, 1 + seed % 4, seed});
    const auto& goal = fx.goals.front();
    const auto distinct = fx.foon.object_nodes().size();
    for (const auto a : kAllAlgorithms) {
      CAPTURE(seed);
      CAPTURE(to_string(a));
      std::size_t selections = 0;
      const SelectionObserver obs = [&](const ObjectNode& node, std::span<const std::size_t> cands, std::size_t chosen) {
        ++selections;
        const auto expected = fx.foon.producer_indices(node);
        CHECK(std::vector<std::size_t>(cands.begin(), cands.end()) ==
              std::vector<std::size_t>(expected.begin(), expected.end()));
        CHECK(std::find(cands.begin(), cands.end(), chosen) != cands.end());
        if (a == Algorithm::gbfs_max_success)
          check_max_success_choice(fx.foon, fx.rates, cands, chosen);
        else if (a == Algorithm::gbfs_min_inputs)
          check_min_inputs_choice(fx.foon, cands, chosen);
        else if (a == Algorithm::bfs || a == Algorithm::dfs)
          CHECK(chosen == cands.front());
      };
      const auto out = run(fx.foon, fx.kitchen, goal, fx.rates, a, kDefaultMaxDepth, obs);
      CHECK(validate_task_tree(out.tree, fx.kitchen));
      CHECK(pairwise_distinct(out.tree));
      CHECK(out.selected_units == out.tree.steps.size());
      CHECK(out.tree.steps.back().produces(goal));
      CHECK(out.expanded_nodes <= distinct);
      CHECK(selections >= out.selected_units);
      CHECK(run(fx.foon, fx.kitchen, goal, fx.rates, a).tree == out.tree);
    }
    // bfs and dfs select the same producer for every node, so the unit sets agree
    CHECK(step_set(run(fx.foon, fx.kitchen, goal, fx.rates, Algorithm::bfs).tree) ==
          step_set(run(fx.foon, fx.kitchen, goal, fx.rates, Algorithm::dfs).tree));
  }
}

} // TEST_SUITE
