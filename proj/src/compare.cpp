#include "foon/compare.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace foon {

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos)
    return value;
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const CompareCell& cell) {
  return cell.units ? std::to_string(*cell.units) : std::string("-");
}

} // namespace

CompareTable compare_algorithms(const UniversalFoon& foon, const Kitchen& kitchen, std::span<const ObjectNode> goals,
                                const SuccessRateTable& rates, std::span<const Algorithm> algorithms,
                                std::optional<std::size_t> max_depth, std::size_t threads) {
  CompareTable table;
  table.algorithms.assign(algorithms.begin(), algorithms.end());
  for (const auto& goal : goals)
    table.rows.push_back(CompareRow{goal.label(), std::vector<CompareCell>(algorithms.size())});

  const auto cells = goals.size() * algorithms.size();
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (auto c = next++; c < cells; c = next++) {
      const auto g = c / algorithms.size();
      const auto a = c % algorithms.size();
      auto& cell = table.rows[g].counts[a];
      try {
        const auto outcome = retrieve(foon, kitchen, goals[g], rates, RetrievalConfig{algorithms[a], max_depth});
        cell.units = count_units(outcome.tree);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cells);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t)
      workers.emplace_back(work);
  }
  return table;
}

std::string render_csv(const CompareTable& table) {
  std::ostringstream out;
  out << "goal";
  for (const auto a : table.algorithms)
    out << ',' << to_string(a);
  out << '\n';
  for (const auto& row : table.rows) {
    out << csv_field(row.goal_label);
    for (const auto& cell : row.counts)
      out << ',' << cell_text(cell);
    out << '\n';
  }
  return out.str();
}

std::string render_text_table(const CompareTable& table) {
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back(std::vector<std::string>{"goal"});
  for (const auto a : table.algorithms)
    grid.back().emplace_back(to_string(a));
  for (const auto& row : table.rows) {
    grid.emplace_back(std::vector<std::string>{row.goal_label});
    for (const auto& cell : row.counts)
      grid.back().push_back(cell_text(cell));
  }

  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& line : grid)
    for (std::size_t c = 0; c < line.size(); ++c)
      width[c] = std::max(width[c], line[c].size());

  std::ostringstream out;
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c == 0)
        out << line[c] << std::string(width[c] - line[c].size(), ' ');
      else
        out << "  " << std::string(width[c] - line[c].size(), ' ') << line[c];
    }
    out << '\n';
  }
  return out.str();
}

} // namespace foon
