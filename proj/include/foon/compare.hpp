#pragma once

// Goal x algorithm table of selected-unit counts.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foon/model.hpp"
#include "foon/retrieval.hpp"

namespace foon {

struct CompareCell {
  std::optional<std::size_t> units; // nullopt when retrieval failed
  std::string error;
};

struct CompareRow {
  std::string goal_label;
  std::vector<CompareCell> counts; // parallel to CompareTable::algorithms
};

struct CompareTable {
  std::vector<Algorithm> algorithms;
  std::vector<CompareRow> rows;
};

/// Runs every goal under every algorithm. Cells are independent and run on
/// up to `threads` workers (0 picks the hardware concurrency); the table
/// keeps goal order and algorithm order.
CompareTable compare_algorithms(const UniversalFoon& foon, const Kitchen& kitchen, std::span<const ObjectNode> goals,
                                const SuccessRateTable& rates, std::span<const Algorithm> algorithms,
                                std::optional<std::size_t> max_depth = kDefaultMaxDepth, std::size_t threads = 0);

/// Header "goal,<algorithm...>", one row per goal, "-" for failed cells.
std::string render_csv(const CompareTable& table);
std::string render_text_table(const CompareTable& table);

} // namespace foon
