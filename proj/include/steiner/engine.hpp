#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steiner/operators.hpp"
#include "steiner/tree_encoding.hpp"

namespace steiner {

/// Ordered PS/E modes; the iteration budget is split into equal contiguous
/// blocks, one per stage; iteration t runs stage floor(t * stages / budget).
struct StagePlan {
  std::vector<TransformMode> stages;

  /// E, PS, E, PS.
  static StagePlan four_stage();
  /// Parses "E,PS,E,PS" or an alias "CM6" (with `depth` stages).
  static StagePlan parse(std::string_view text, std::optional<std::size_t> depth = {});
  /// All 2^depth plans in alias order: CM1 is all-E, the last is all-PS.
  static std::vector<StagePlan> enumerate(std::size_t depth);

  std::string to_string() const;
  void check() const;

  friend bool operator==(const StagePlan&, const StagePlan&) = default;
};

struct RunConfig {
  std::size_t population = 50;
  std::size_t evaluations = 500;
  double w_start = 0.95, w_end = 0.4;
  double c1_start = 0.82, c1_end = 0.5;
  double c2_start = 0.4, c2_end = 0.83;
  std::size_t mutation_points = 2;
  RoutingMode mode = RoutingMode::XArch;
  /// Overrides the mode's choice set (e.g. {C0, C1} for two-choice runs).
  std::optional<ChoiceDomain> choices;
  std::uint64_t seed = 1;
  StagePlan stage_plan = StagePlan::four_stage();
  CommonEdgeChoice common_edge_choice = CommonEdgeChoice::FromParticle;
  double ps_adopt_probability = 0.5;
  /// Worker cap for particle updates; results do not depend on it.
  std::size_t threads = 1;

  ChoiceDomain domain() const { return choices ? *choices : ChoiceDomain(mode); }
  /// Throws InputError on out-of-range values.
  void check() const;
};

/// Linear schedule start - (start - end) * eval / evaluations.
double schedule(double start, double end, std::size_t eval, std::size_t evaluations);

/// Stage active at iteration `eval`.
TransformMode stage_mode(const StagePlan& plan, std::size_t eval,
                         std::size_t evaluations);

struct IterationInfo {
  std::size_t iteration = 0;
  double w = 0.0, c1 = 0.0, c2 = 0.0;
  TransformMode mode = TransformMode::PS;
  double gbest_length = 0.0;
};

using Observer = std::function<void(const IterationInfo&)>;

struct RunResult {
  /// The net as optimized: pins sorted by (x, y), duplicates removed. Pin
  /// indices in `best` refer to this net.
  Net net;
  Particle best;
  double best_length = 0.0;
  double best_fitness = 0.0;
  /// gbest length after initialization, then after every iteration.
  std::vector<double> history;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Runs the discrete PSO. Identical inputs give bit-identical results
/// (apart from wall_seconds) for any `threads` value.
RunResult run(const Net& net, const RunConfig& cfg, const Observer& observer = {});

struct RunStats {
  double best = 0.0;
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  std::vector<double> lengths;
  std::vector<std::uint64_t> seeds;
  double wall_seconds = 0.0;
};

RunStats summarize(std::vector<double> lengths);

/// `repeats` runs with seeds cfg.seed, cfg.seed + 1, ...
RunStats run_many(const Net& net, const RunConfig& cfg, std::size_t repeats);

}  // namespace steiner
