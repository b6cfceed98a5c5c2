#include "foon/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "foon/compare.hpp"
#include "foon/generate.hpp"
#include "foon/io.hpp"
#include "foon/retrieval.hpp"

namespace foon::cli {

namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FileError("cannot read '" + path + "'");
  return in;
}

UniversalFoon load_foon(const std::vector<std::string>& paths) {
  UniversalFoon foon;
  for (const auto& path : paths) {
    auto in = open_input(path);
    foon = merge_subgraph(std::move(foon), parse_subgraph(in, path, path));
  }
  return foon;
}

SuccessRateTable load_rates(const std::string& path) {
  auto in = open_input(path);
  return parse_motion_rates(in, path);
}

Kitchen load_kitchen(const std::string& path) {
  auto in = open_input(path);
  return parse_kitchen(in, path);
}

std::vector<ObjectNode> load_goals(const std::string& path) {
  auto in = open_input(path);
  return parse_goals(in, path);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!normalize_label(item).empty())
      out.push_back(item);
  return out;
}

std::optional<std::size_t> parse_max_depth(const std::string& text) {
  if (text == "unlimited")
    return std::nullopt;
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || value == 0)
    throw CLI::ValidationError("--max-depth", "expected a positive integer or 'unlimited'");
  return value;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw FileError("cannot write '" + path + "'");
  file << text;
}

struct Options {
  std::vector<std::string> foon_paths;
  std::string motions;
  std::string kitchen;
  std::string goals;
  std::string goal_label;
  std::string goal_states;
  std::string goal_ingredients;
  std::string algorithm = "bfs";
  std::string algorithms;
  std::string max_depth = std::to_string(kDefaultMaxDepth);
  std::string format = "text";
  std::string out;
  std::size_t units = 10;
  std::size_t branching = 2;
  std::uint64_t seed = 0;
};

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::optional<UniversalFoon> foon;
  std::optional<SuccessRateTable> rates;

  const auto check = [&](const std::string& path, const auto& load, const auto& describe) {
    try {
      const auto value = load(path);
      out << path << ": OK (" << describe(value) << ")\n";
      ++ok;
      return std::optional(value);
    } catch (const ParseError& e) {
      err << e.what() << '\n';
      ++failed;
      return std::optional<std::decay_t<decltype(load(path))>>{};
    }
  };

  for (const auto& path : opt.foon_paths) {
    auto part = check(path, [](const std::string& p) { return load_foon({p}); },
                      [](const UniversalFoon& f) { return std::to_string(f.size()) + " units"; });
    if (part) {
      if (!foon)
        foon.emplace();
      for (const auto& unit : part->units())
        foon->add(unit);
    }
  }
  rates = check(opt.motions, load_rates,
                [](const SuccessRateTable& t) { return std::to_string(t.size()) + " motion rates"; });
  check(opt.kitchen, load_kitchen, [](const Kitchen& k) { return std::to_string(k.size()) + " kitchen items"; });
  check(opt.goals, load_goals,
        [](const std::vector<ObjectNode>& g) { return std::to_string(g.size()) + " goal nodes"; });

  std::size_t rated = 0;
  if (foon && rates) {
    std::set<std::string> motions;
    for (const auto& unit : foon->units())
      motions.insert(unit.motion().label());
    for (const auto& m : motions) {
      if (rates->contains(m))
        ++rated;
      else
        err << "warning: motion '" << m << "' has no success rate\n";
    }
  }

  if (failed > 0) {
    err << failed << " file(s) failed to parse\n";
    return kParseError;
  }
  out << ok << " files OK, " << foon->size() << " units, " << rated << " motions rated\n";
  return kSuccess;
}

int cmd_retrieve(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto foon = load_foon(opt.foon_paths);
  const auto rates = load_rates(opt.motions);
  const auto kitchen = load_kitchen(opt.kitchen);
  const auto goal = [&] {
    if (!opt.goal_label.empty())
      return ObjectNode(opt.goal_label, split_list(opt.goal_states), split_list(opt.goal_ingredients));
    if (opt.goals.empty())
      throw std::invalid_argument("retrieve needs --goal-label or --goals");
    const auto goals = load_goals(opt.goals);
    if (goals.empty())
      throw ParseError(opt.goals, 1, ParseErrorKind::bad_json_shape, "goal list is empty");
    return goals.front();
  }();
  const RetrievalConfig config{parse_algorithm(opt.algorithm), parse_max_depth(opt.max_depth)};

  RetrievalOutcome outcome;
  try {
    outcome = retrieve(foon, kitchen, goal, rates, config);
  } catch (const RetrievalError& e) {
    err << "error: " << e.what() << '\n';
    return kRetrievalError;
  }
  write_output(opt.out, opt.format == "dot" ? export_dot(outcome.tree) : serialize_task_tree(outcome.tree), out);
  err << "selected_units=" << outcome.selected_units << " expanded_nodes=" << outcome.expanded_nodes << '\n';
  return kSuccess;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto foon = load_foon(opt.foon_paths);
  const auto rates = load_rates(opt.motions);
  const auto kitchen = load_kitchen(opt.kitchen);
  const auto goals = load_goals(opt.goals);

  std::vector<Algorithm> algorithms;
  if (opt.algorithms.empty())
    algorithms.assign(std::begin(kTableAlgorithms), std::end(kTableAlgorithms));
  else
    for (const auto& name : split_list(opt.algorithms))
      algorithms.push_back(parse_algorithm(normalize_label(name)));

  const auto table = compare_algorithms(foon, kitchen, goals, rates, algorithms, parse_max_depth(opt.max_depth));
  out << render_text_table(table);
  for (const auto& row : table.rows)
    for (std::size_t a = 0; a < row.counts.size(); ++a)
      if (!row.counts[a].units)
        err << row.goal_label << " / " << to_string(algorithms[a]) << ": " << row.counts[a].error << '\n';
  if (!opt.out.empty())
    write_output(opt.out, render_csv(table), out);
  return kSuccess;
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const auto fixture = generate_fixture(GeneratorParams{opt.units, opt.branching, opt.seed});
  write_fixture(fixture, opt.out);
  out << "wrote " << fixture.foon.size() << " units, " << fixture.kitchen.size() << " kitchen items to "
      << opt.out << '\n';
  return kSuccess;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functional object-oriented network task-tree retrieval", "foon"};
  app.require_subcommand(1);
  Options opt;

  const auto add_files = [&](CLI::App* cmd, bool goals) {
    cmd->add_option("--foon", opt.foon_paths, "FOON text file(s); several are merged")->required();
    cmd->add_option("--motions", opt.motions, "motion success rates (label<TAB>rate)")->required();
    cmd->add_option("--kitchen", opt.kitchen, "kitchen.json")->required();
    if (goals)
      cmd->add_option("--goals", opt.goals, "goal_nodes.json")->required();
  };
  const auto add_depth = [&](CLI::App* cmd) {
    cmd->add_option("--max-depth", opt.max_depth, "unit-hop ceiling, or 'unlimited'")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "parse all input files and report problems");
  add_files(validate, true);

  auto* retrieve_cmd = app.add_subcommand("retrieve", "retrieve a task tree for one goal");
  add_files(retrieve_cmd, false);
  auto* goal_file = retrieve_cmd->add_option("--goals", opt.goals, "goal_nodes.json; the first goal is used");
  retrieve_cmd->add_option("--goal-label", opt.goal_label, "goal object label")->excludes(goal_file);
  retrieve_cmd->add_option("--goal-states", opt.goal_states, "comma-separated goal states")->excludes(goal_file);
  retrieve_cmd->add_option("--goal-ingredients", opt.goal_ingredients, "comma-separated goal ingredients")
      ->excludes(goal_file);
  retrieve_cmd->add_option("--algorithm", opt.algorithm, "bfs|dfs|ids|gbfs-max-success|gbfs-min-inputs")
      ->capture_default_str();
  add_depth(retrieve_cmd);
  retrieve_cmd->add_option("--format", opt.format, "text|dot")
      ->check(CLI::IsMember({"text", "dot"}))
      ->capture_default_str();
  retrieve_cmd->add_option("--out", opt.out, "output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "count selected units per goal and algorithm");
  add_files(compare, true);
  compare->add_option("--algorithms", opt.algorithms,
                      "comma-separated algorithms (default bfs,gbfs-max-success,gbfs-min-inputs,ids)");
  add_depth(compare);
  compare->add_option("--out", opt.out, "CSV output file");

  auto* generate = app.add_subcommand("generate", "write a random solvable fixture");
  generate->add_option("--units", opt.units, "number of functional units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--branching", opt.branching, "maximum inputs per unit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  generate->add_option("--out", opt.out, "output directory")->required();

  std::vector<const char*> argv{"foon"};
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate->parsed())
      return cmd_validate(opt, out, err);
    if (retrieve_cmd->parsed())
      return cmd_retrieve(opt, out, err);
    if (compare->parsed())
      return cmd_compare(opt, out, err);
    return cmd_generate(opt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

} // namespace foon::cli
