#pragma once

// Random, always-solvable FOON fixtures for property tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "foon/model.hpp"

namespace foon {

struct GeneratorParams {
  std::size_t num_units = 10;
  /// Upper bound on inputs per unit.
  std::size_t branching = 2;
  std::uint64_t seed = 0;
};

struct Fixture {
  UniversalFoon foon;
  SuccessRateTable rates;
  Kitchen kitchen;
  std::vector<ObjectNode> goals;
};

/// Layered DAG of exactly `num_units` units. Every unit's inputs are raw
/// kitchen items or outputs of earlier units, and roughly a quarter of the
/// units are alternative producers of an existing object, so every object is
/// reachable from the kitchen whichever producer is picked. The goal is the
/// output of the last unit. Same params give the same fixture on every
/// platform.
Fixture generate_fixture(const GeneratorParams& params);

/// Writes FOON.txt, motion.txt, kitchen.json and goal_nodes.json into `dir`.
void write_fixture(const Fixture& fixture, const std::filesystem::path& dir);

} // namespace foon
