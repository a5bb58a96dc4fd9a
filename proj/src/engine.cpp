#include "steiner/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "steiner/errors.hpp"
#include "steiner/rng.hpp"

namespace steiner {

// ---------------------------------------------------------------------------
// StagePlan

StagePlan StagePlan::four_stage() {
  using enum TransformMode;
  return {{E, PS, E, PS}};
}

std::vector<StagePlan> StagePlan::enumerate(std::size_t depth) {
  if (depth < 1 || depth > 6) throw InputError("stage depth must be in 1..6");
  std::vector<StagePlan> plans;
  for (std::size_t bits = 0; bits < (std::size_t{1} << depth); ++bits) {
    StagePlan plan;
    for (std::size_t i = 0; i < depth; ++i) {
      const bool ps = (bits >> (depth - 1 - i)) & 1u;
      plan.stages.push_back(ps ? TransformMode::PS : TransformMode::E);
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

StagePlan StagePlan::parse(std::string_view text, std::optional<std::size_t> depth) {
  if (text.size() > 2 && (text.substr(0, 2) == "CM" || text.substr(0, 2) == "cm")) {
    const std::size_t d = depth.value_or(4);
    if (d < 2 || d > 4) throw InputError("CM aliases are defined for depths 2-4");
    std::size_t index = 0;
    for (char ch : text.substr(2)) {
      if (ch < '0' || ch > '9') throw InputError("invalid stage alias '" + std::string(text) + "'");
      index = index * 10 + static_cast<std::size_t>(ch - '0');
    }
    const auto plans = enumerate(d);
    if (index < 1 || index > plans.size()) {
      throw InputError("stage alias '" + std::string(text) + "' out of range for depth " +
                       std::to_string(d));
    }
    return plans[index - 1];
  }

  StagePlan plan;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find_first_of(",:", pos), text.size());
    std::string_view tok = text.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    plan.stages.push_back(parse_transform_mode(tok));
    pos = next + 1;
  }
  plan.check();
  return plan;
}

std::string StagePlan::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (i) out += ',';
    out += steiner::to_string(stages[i]);
  }
  return out;
}

void StagePlan::check() const {
  if (stages.empty() || stages.size() > 6) {
    throw InputError("stage plan must have 1 to 6 stages, got " +
                     std::to_string(stages.size()));
  }
}

void RunConfig::check() const {
  if (population < 2) throw InputError("population must be at least 2");
  if (evaluations < 1) throw InputError("evaluations must be at least 1");
  if (mutation_points < 1) throw InputError("mutation points must be at least 1");
  for (double v : {w_start, w_end, c1_start, c1_end, c2_start, c2_end, ps_adopt_probability}) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("schedule endpoints must lie in [0, 1]");
  }
  stage_plan.check();
}

// ---------------------------------------------------------------------------
// Schedules

double schedule(double start, double end, std::size_t eval, std::size_t evaluations) {
  if (evaluations == 0) return start;
  return start - (start - end) * static_cast<double>(eval) /
                     static_cast<double>(evaluations);
}

TransformMode stage_mode(const StagePlan& plan, std::size_t eval,
                         std::size_t evaluations) {
  const std::size_t count = plan.stages.size();
  const std::size_t block = evaluations == 0 ? 0 : eval * count / evaluations;
  return plan.stages[std::min(block, count - 1)];
}

// ---------------------------------------------------------------------------
// Main loop

namespace {

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled by exactly one worker, so per-index work stays deterministic.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (std::size_t i = 0; i < count; i += threads) fn(i);
}

}  // namespace

RunResult run(const Net& input, const RunConfig& cfg, const Observer& observer) {
  cfg.check();
  const auto started = std::chrono::steady_clock::now();

  // Step 1: ascending (x, y) order, duplicates dropped.
  const Net net = input.normalized();
  if (net.size() < 2) {
    throw InputError("net '" + input.name + "' has fewer than 2 distinct pins");
  }
  const ChoiceDomain domain = cfg.domain();
  const OperatorOptions options{cfg.mutation_points, cfg.common_edge_choice,
                                cfg.ps_adopt_probability};
  const std::size_t pop = cfg.population;

  std::vector<Rng> streams;
  streams.reserve(pop);
  for (std::size_t i = 0; i < pop; ++i) streams.push_back(make_stream(cfg.seed, i));

  // Step 2: one MST elite, the rest random trees.
  std::vector<Particle> particles(pop);
  parallel_for(pop, cfg.threads, [&](std::size_t i) {
    particles[i] = i == 0 ? mst_spanning_tree(net, domain)
                          : random_spanning_tree(net, domain, streams[i]);
    particles[i].evaluate(net);
  });

  // Step 3: personal and global bests.
  std::vector<Particle> pbest = particles;
  std::size_t gbest_index = 0;
  for (std::size_t i = 1; i < pop; ++i) {
    if (pbest[i].length() < pbest[gbest_index].length()) gbest_index = i;
  }
  Particle gbest = pbest[gbest_index];

  RunResult result;
  result.history.reserve(cfg.evaluations + 1);
  result.history.push_back(gbest.length());

  // Steps 4-7.
  for (std::size_t eval = 0; eval < cfg.evaluations; ++eval) {
    const VelocityWeights weights{
        schedule(cfg.w_start, cfg.w_end, eval, cfg.evaluations),
        schedule(cfg.c1_start, cfg.c1_end, eval, cfg.evaluations),
        schedule(cfg.c2_start, cfg.c2_end, eval, cfg.evaluations)};
    const TransformMode mode = stage_mode(cfg.stage_plan, eval, cfg.evaluations);

    // Every particle reads the previous iteration's pbest/gbest.
    parallel_for(pop, cfg.threads, [&](std::size_t i) {
      particles[i] = apply_velocity(particles[i], pbest[i], gbest, weights, mode, net,
                                    domain, streams[i], options);
      particles[i].evaluate(net);
      if (particles[i].length() < pbest[i].length()) pbest[i] = particles[i];
    });

    for (std::size_t i = 0; i < pop; ++i) {
      if (pbest[i].length() < gbest.length()) gbest = pbest[i];
    }
    result.history.push_back(gbest.length());

    if (observer) {
      observer(IterationInfo{eval, weights.w, weights.c1, weights.c2, mode,
                             gbest.length()});
    }
  }

  result.best_length = gbest.length();
  result.best_fitness = fitness_of(result.best_length);
  result.best = std::move(gbest);
  result.net = net;
  result.seed = cfg.seed;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

RunStats summarize(std::vector<double> lengths) {
  RunStats stats;
  if (lengths.empty()) return stats;
  const auto n = static_cast<double>(lengths.size());
  stats.best = *std::min_element(lengths.begin(), lengths.end());
  stats.mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : lengths) ss += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(ss / n);
  stats.lengths = std::move(lengths);
  return stats;
}

RunStats run_many(const Net& net, const RunConfig& cfg, std::size_t repeats) {
  if (repeats < 1) throw InputError("repeats must be at least 1");
  std::vector<double> lengths;
  std::vector<std::uint64_t> seeds;
  double seconds = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    RunConfig c = cfg;
    c.seed = cfg.seed + r;
    const RunResult res = run(net, c);
    lengths.push_back(res.best_length);
    seeds.push_back(c.seed);
    seconds += res.wall_seconds;
  }
  RunStats stats = summarize(std::move(lengths));
  stats.seeds = std::move(seeds);
  stats.wall_seconds = seconds;
  return stats;
}

}  // namespace steiner
