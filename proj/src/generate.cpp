#include "foon/generate.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>

#include "foon/io.hpp"

namespace foon {

namespace {

// std::mt19937_64's output sequence is fixed by the standard; the
// <random> distributions are not, so draws are reduced by hand.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish value in [0, bound).
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }
  bool one_in(std::size_t n) { return below(n) == 0; }

private:
  std::mt19937_64 engine_;
};

constexpr std::size_t kMaxMotions = 8;

class FixtureBuilder {
public:
  explicit FixtureBuilder(const GeneratorParams& params) : params_(params), rng_(params.seed) {}

  Fixture build() {
    const auto motions = std::min(kMaxMotions, params_.num_units);
    for (std::size_t m = 0; m < motions; ++m)
      fixture_.rates.insert(motion_label(m), static_cast<double>(1 + rng_.below(100)) / 100.0);

    for (std::size_t i = 0; i < params_.num_units; ++i)
      add_unit(i, i + 1 == params_.num_units, motions);
    return std::move(fixture_);
  }

private:
  static std::string motion_label(std::size_t m) { return "motion-" + std::to_string(m); }

  ObjectNode new_raw_item() {
    const auto id = raw_count_++;
    std::vector<std::string> states;
    if (rng_.one_in(4))
      states.push_back("fresh");
    ObjectNode node("raw-" + std::to_string(id), states);
    fixture_.kitchen.add(node);
    return node;
  }

  // Objects are ranked by their position in produced_; every unit draws its
  // inputs from strictly lower ranks, which keeps the network acyclic.
  void add_unit(std::size_t i, bool last, std::size_t motions) {
    const bool alternative = !last && produced_.size() >= 2 && rng_.one_in(4);
    std::size_t pool_end = produced_.size();
    std::size_t target = 0;
    if (alternative) {
      target = 1 + rng_.below(produced_.size() - 1);
      pool_end = target;
    }

    std::vector<ObjectNode> inputs;
    std::vector<std::size_t> used;
    bool has_raw = false;
    const auto wanted = 1 + rng_.below(params_.branching);
    if (last && pool_end > 0) {
      inputs.push_back(produced_[pool_end - 1]);
      used.push_back(pool_end - 1);
    }
    while (inputs.size() < wanted) {
      if (pool_end > 0 && !rng_.one_in(3)) {
        const auto window = std::min<std::size_t>(pool_end, 4);
        const auto idx = rng_.one_in(2) ? pool_end - 1 - rng_.below(window) : rng_.below(pool_end);
        if (std::find(used.begin(), used.end(), idx) == used.end()) {
          used.push_back(idx);
          inputs.push_back(produced_[idx]);
          continue;
        }
      }
      inputs.push_back(new_raw_item());
      has_raw = true;
    }
    // A fresh raw input keeps an alternative producer distinct from every
    // existing unit.
    if (alternative && !has_raw)
      inputs.push_back(new_raw_item());

    MotionNode motion(motion_label(rng_.below(motions)));
    std::vector<ObjectNode> outputs;
    if (alternative) {
      outputs.push_back(produced_[target]);
    } else {
      std::vector<std::string> ingredients;
      if (rng_.one_in(3)) {
        ingredients.push_back(inputs.front().label());
        if (inputs.size() > 1 && rng_.one_in(2))
          ingredients.push_back(inputs.back().label());
      }
      outputs.emplace_back("item-" + std::to_string(i), std::vector<std::string>{"stage-" + std::to_string(i)},
                           ingredients);
      if (!last && rng_.one_in(5))
        outputs.emplace_back("scrap-" + std::to_string(i));
    }

    const FunctionalUnit unit(std::move(inputs), std::move(motion), outputs);
    if (!fixture_.foon.add(unit))
      throw std::logic_error("generator produced a duplicate unit");
    if (!alternative)
      produced_.insert(produced_.end(), outputs.begin(), outputs.end());
    if (last)
      fixture_.goals = {outputs.front()};
  }

  GeneratorParams params_;
  Rng rng_;
  Fixture fixture_;
  std::vector<ObjectNode> produced_;
  std::size_t raw_count_ = 0;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
}

} // namespace

Fixture generate_fixture(const GeneratorParams& params) {
  if (params.num_units == 0)
    throw std::invalid_argument("num_units must be at least 1");
  if (params.branching == 0)
    throw std::invalid_argument("branching must be at least 1");
  return FixtureBuilder(params).build();
}

void write_fixture(const Fixture& fixture, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(dir / "FOON.txt", serialize_universal_foon(fixture.foon));
  write_text(dir / "motion.txt", serialize_motion_rates(fixture.rates));
  const std::vector<ObjectNode> items(fixture.kitchen.items().begin(), fixture.kitchen.items().end());
  write_text(dir / "kitchen.json", serialize_object_nodes(items));
  write_text(dir / "goal_nodes.json", serialize_object_nodes(fixture.goals));
}

} // namespace foon
