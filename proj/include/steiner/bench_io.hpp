#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "steiner/engine.hpp"
#include "steiner/tree_encoding.hpp"

namespace steiner {

// Net file format:
//
//   # comment
//   net <name> <n>
//   <x> <y>        (n lines)
//
// Blank lines and '#' comments may appear anywhere.

struct NetFile {
  std::vector<Net> nets;
  /// Repeated pins dropped while reading.
  std::size_t duplicates_dropped = 0;
};

/// Throws InputError carrying the offending line number.
NetFile parse_netfile(std::string_view text);
NetFile read_netfile(const std::filesystem::path& path);
std::string serialize_netfile(std::span<const Net> nets);

/// Uniform random nets with exactly `size` distinct pins each, coordinates in
/// [lo, hi] on both axes. Names are "r<size>_<k>".
std::vector<Net> generate_random_suite(std::span<const std::size_t> sizes,
                                       std::size_t nets_per_size, std::int32_t lo,
                                       std::int32_t hi, std::uint64_t seed);

struct NamedConfig {
  std::string name;
  RunConfig config;
};

struct ReportCell {
  std::string net;
  std::string config;
  RunStats stats;
  /// (baseline mean - mean) / baseline mean * 100 on this net.
  double improvement_pct = 0.0;
};

struct ReportRow {
  std::string config;
  /// Average of improvement_pct over nets.
  double mean_improvement_pct = 0.0;
  /// Average of per-net mean lengths.
  double mean_length = 0.0;
};

struct Report {
  NamedConfig baseline;
  std::vector<NamedConfig> configs;
  std::size_t repeats = 0;
  std::vector<std::string> nets;
  /// Baseline cells first (config == baseline.name), then one cell per
  /// (config, net) in config-major order.
  std::vector<ReportCell> cells;
  std::vector<ReportRow> rows;
};

double improvement_pct(double baseline, double value);

/// run_many for every (net, config) plus the baseline, with improvement
/// percentages against the baseline mean. A config named like the baseline
/// reuses the baseline runs.
Report ablation_table(std::span<const Net> nets, std::span<const NamedConfig> configs,
                      std::size_t repeats, const NamedConfig& baseline);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const Report& report, bool include_timing = true);
nlohmann::json to_json(const RunResult& result, bool include_timing = true);

/// One line per config row.
std::string report_rows_csv(const Report& report);
/// One line per (net, config) cell.
std::string report_cells_csv(const Report& report, bool include_timing = true);

/// SVG 1.1 drawing of the routed tree: pins as circles, segments as lines
/// and the length in a caption. Throws InvariantError for invalid particles.
std::string render_svg(const Net& net, const Particle& particle);

}  // namespace steiner
