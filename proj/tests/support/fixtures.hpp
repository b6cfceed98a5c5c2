#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "foon/io.hpp"
#include "foon/model.hpp"

namespace foon::testing {

inline std::filesystem::path fixture_dir(const std::string& name) {
  return std::filesystem::path(FOON_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  UniversalFoon foon;
  SuccessRateTable rates;
  Kitchen kitchen;
  std::vector<ObjectNode> goals;
};

inline Loaded load_fixture_dir(const std::filesystem::path& dir) {
  Loaded f;
  std::ifstream foon_in(dir / "FOON.txt");
  f.foon = parse_universal_foon(foon_in);
  std::ifstream rates_in(dir / "motion.txt");
  f.rates = parse_motion_rates(rates_in);
  std::ifstream kitchen_in(dir / "kitchen.json");
  f.kitchen = parse_kitchen(kitchen_in);
  std::ifstream goals_in(dir / "goal_nodes.json");
  f.goals = parse_goals(goals_in);
  return f;
}

inline Loaded load_fixture(const std::string& name) { return load_fixture_dir(fixture_dir(name)); }

// The three-step sweet potato recipe: peel, pick and place, cut.
inline ObjectNode sp_unpeeled() { return ObjectNode("sweet potato", {"unpeeled"}); }
inline ObjectNode sp_peeled() { return ObjectNode("sweet potato", {"peeled"}); }
inline ObjectNode sp_on_board() { return ObjectNode("sweet potato", {"peeled", "on cutting board"}); }
inline ObjectNode sp_chopped() { return ObjectNode("sweet potato", {"chopped", "on cutting board"}); }
inline ObjectNode knife() { return ObjectNode("knife"); }
inline ObjectNode board() { return ObjectNode("cutting board"); }
inline ObjectNode board_with_sp() { return ObjectNode("cutting board", {}, {"sweet potato"}); }

inline FunctionalUnit peel_unit() {
  return FunctionalUnit({sp_unpeeled(), knife()}, MotionNode("peel"), {sp_peeled()});
}
inline FunctionalUnit place_unit() {
  return FunctionalUnit({sp_peeled(), board()}, MotionNode("pick and place"), {board_with_sp(), sp_on_board()});
}
inline FunctionalUnit cut_unit() {
  return FunctionalUnit({board_with_sp(), sp_on_board(), knife()}, MotionNode("cut"), {sp_chopped()});
}

inline Subgraph sweet_potato_subgraph() { return Subgraph{"sweet potato", {peel_unit(), place_unit(), cut_unit()}}; }

inline Kitchen sweet_potato_kitchen() { return Kitchen({knife(), board(), sp_unpeeled()}); }

inline SuccessRateTable sweet_potato_rates() {
  SuccessRateTable t;
  t.insert("peel", 0.9);
  t.insert("pick and place", 0.8);
  t.insert("cut", 0.7);
  return t;
}

} // namespace foon::testing
