#include "steiner/bench_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "steiner/errors.hpp"
#include "steiner/rng.hpp"

namespace steiner {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class Int>
bool parse_int(std::string_view tok, Int& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::string fmt_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------
// Net files

NetFile parse_netfile(std::string_view text) {
  NetFile file;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  Net current;
  std::size_t expected = 0, seen = 0, header_line = 0;
  std::set<Point> unique;
  bool in_net = false;

  auto finish = [&] {
    if (!in_net) return;
    if (seen != expected) {
      throw InputError("net '" + current.name + "' declares " + std::to_string(expected) +
                           " pins but has " + std::to_string(seen),
                       header_line);
    }
    if (current.pins.size() < 2) {
      throw InputError("net '" + current.name + "' has fewer than 2 distinct pins",
                       header_line);
    }
    file.nets.push_back(std::move(current));
    current = {};
    unique.clear();
    in_net = false;
  };

  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (tokens[0] == "net") {
      finish();
      if (tokens.size() != 3) {
        throw InputError("malformed net header; expected 'net <name> <n>'", line_no);
      }
      std::size_t n = 0;
      if (!parse_int(tokens[2], n) || n < 2) {
        throw InputError("invalid pin count '" + std::string(tokens[2]) + "'", line_no);
      }
      current.name = std::string(tokens[1]);
      expected = n;
      seen = 0;
      header_line = line_no;
      in_net = true;
    } else {
      if (!in_net) throw InputError("pin line outside of a net block", line_no);
      if (tokens.size() != 2) {
        throw InputError("expected '<x> <y>' pin line", line_no);
      }
      if (seen == expected) {
        throw InputError("net '" + current.name + "' declares " + std::to_string(expected) +
                             " pins but has more",
                         header_line);
      }
      Point p;
      if (!parse_int(tokens[0], p.x) || !parse_int(tokens[1], p.y)) {
        throw InputError("non-integer or out-of-range coordinate", line_no);
      }
      ++seen;
      if (unique.insert(p).second) {
        current.pins.push_back(p);
      } else {
        ++file.duplicates_dropped;
      }
    }
    if (end == text.size()) break;
  }
  finish();
  return file;
}

NetFile read_netfile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open net file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_netfile(buf.str());
}

std::string serialize_netfile(std::span<const Net> nets) {
  std::string out;
  for (const Net& net : nets) {
    out += "net " + net.name + " " + std::to_string(net.size()) + "\n";
    for (const Point& p : net.pins) {
      out += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
    }
  }
  return out;
}

std::vector<Net> generate_random_suite(std::span<const std::size_t> sizes,
                                       std::size_t nets_per_size, std::int32_t lo,
                                       std::int32_t hi, std::uint64_t seed) {
  if (hi < lo) throw InputError("coordinate range is empty");
  const auto side = static_cast<std::uint64_t>(std::int64_t{hi} - lo + 1);
  Rng rng = make_stream(seed, 0);
  std::vector<Net> nets;
  for (std::size_t size : sizes) {
    if (size < 2) throw InputError("net sizes must be at least 2");
    if (side * side < size) {
      throw InputError("coordinate range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] cannot hold " + std::to_string(size) + " distinct pins");
    }
    for (std::size_t k = 0; k < nets_per_size; ++k) {
      Net net{"r" + std::to_string(size) + "_" + std::to_string(k), {}};
      std::set<Point> used;
      while (net.pins.size() < size) {
        const Point p{uniform_int<std::int32_t>(rng, lo, hi),
                      uniform_int<std::int32_t>(rng, lo, hi)};
        if (used.insert(p).second) net.pins.push_back(p);
      }
      nets.push_back(std::move(net));
    }
  }
  return nets;
}

// ---------------------------------------------------------------------------
// Ablation reports

double improvement_pct(double baseline, double value) {
  if (baseline == 0.0) return 0.0;
  return (baseline - value) / baseline * 100.0;
}

Report ablation_table(std::span<const Net> nets, std::span<const NamedConfig> configs,
                      std::size_t repeats, const NamedConfig& baseline) {
  if (repeats < 1) throw InputError("repeats must be at least 1");
  Report report;
  report.baseline = baseline;
  report.configs.assign(configs.begin(), configs.end());
  report.repeats = repeats;
  for (const Net& net : nets) report.nets.push_back(net.name);

  std::vector<double> baseline_means;
  for (const Net& net : nets) {
    ReportCell cell{net.name, baseline.name, run_many(net, baseline.config, repeats), 0.0};
    baseline_means.push_back(cell.stats.mean);
    report.cells.push_back(std::move(cell));
  }
  if (nets.empty()) return report;

  for (const NamedConfig& cfg : configs) {
    ReportRow row{cfg.name, 0.0, 0.0};
    for (std::size_t k = 0; k < nets.size(); ++k) {
      ReportCell cell{nets[k].name, cfg.name, {}, 0.0};
      cell.stats = cfg.name == baseline.name ? report.cells[k].stats
                                             : run_many(nets[k], cfg.config, repeats);
      cell.improvement_pct = improvement_pct(baseline_means[k], cell.stats.mean);
      row.mean_improvement_pct += cell.improvement_pct;
      row.mean_length += cell.stats.mean;
      report.cells.push_back(std::move(cell));
    }
    row.mean_improvement_pct /= static_cast<double>(nets.size());
    row.mean_length /= static_cast<double>(nets.size());
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {
      {"population", cfg.population},
      {"evaluations", cfg.evaluations},
      {"w", {cfg.w_start, cfg.w_end}},
      {"c1", {cfg.c1_start, cfg.c1_end}},
      {"c2", {cfg.c2_start, cfg.c2_end}},
      {"mutation_points", cfg.mutation_points},
      {"mode", to_string(cfg.mode)},
      {"choices", cfg.domain().to_string()},
      {"seed", cfg.seed},
      {"stages", cfg.stage_plan.to_string()},
      {"common_edge_choice",
       cfg.common_edge_choice == CommonEdgeChoice::FromGuide ? "guide" : "particle"},
      {"ps_adopt_probability", cfg.ps_adopt_probability},
  };
}

nlohmann::json to_json(const Report& report, bool include_timing) {
  nlohmann::json j;
  j["baseline"] = {{"name", report.baseline.name}, {"config", to_json(report.baseline.config)}};
  j["configs"] = nlohmann::json::array();
  for (const auto& c : report.configs) {
    j["configs"].push_back({{"name", c.name}, {"config", to_json(c.config)}});
  }
  j["repeats"] = report.repeats;
  j["nets"] = report.nets;
  j["cells"] = nlohmann::json::array();
  for (const auto& cell : report.cells) {
    nlohmann::json c{{"net", cell.net},
                     {"config", cell.config},
                     {"best", cell.stats.best},
                     {"mean", cell.stats.mean},
                     {"stddev", cell.stats.stddev},
                     {"lengths", cell.stats.lengths},
                     {"seeds", cell.stats.seeds},
                     {"improvement_pct", cell.improvement_pct}};
    if (include_timing) c["seconds"] = cell.stats.wall_seconds;
    j["cells"].push_back(std::move(c));
  }
  j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    j["rows"].push_back({{"config", row.config},
                         {"mean_improvement_pct", row.mean_improvement_pct},
                         {"mean_length", row.mean_length}});
  }
  return j;
}

nlohmann::json to_json(const RunResult& result, bool include_timing) {
  nlohmann::json j{{"net", result.net.name},
                   {"pins", result.net.size()},
                   {"length", result.best_length},
                   {"fitness", result.best_fitness},
                   {"particle", serialize(result.best, result.best_fitness)},
                   {"seed", result.seed},
                   {"history", result.history}};
  if (include_timing) j["seconds"] = result.wall_seconds;
  return j;
}

std::string report_rows_csv(const Report& report) {
  std::string out = "config,mean_improvement_pct,mean_length\n";
  for (const auto& row : report.rows) {
    out += csv_field(row.config) + "," + fmt_double(row.mean_improvement_pct, 4) + "," +
           fmt_double(row.mean_length, 4) + "\n";
  }
  return out;
}

std::string report_cells_csv(const Report& report, bool include_timing) {
  std::string out = "net,config,best,mean,stddev,improvement_pct";
  out += include_timing ? ",seconds\n" : "\n";
  for (const auto& cell : report.cells) {
    out += csv_field(cell.net) + "," + csv_field(cell.config) + "," + fmt_double(cell.stats.best, 4) + "," +
           fmt_double(cell.stats.mean, 4) + "," + fmt_double(cell.stats.stddev, 4) + "," +
           fmt_double(cell.improvement_pct, 4);
    if (include_timing) out += "," + fmt_double(cell.stats.wall_seconds, 3);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

std::string render_svg(const Net& net, const Particle& particle) {
  const auto segments = tree_segments(net, particle);
  const double length = tree_length(net, particle);

  std::int64_t min_x = net.pins[0].x, max_x = min_x, min_y = net.pins[0].y, max_y = min_y;
  for (const Point& p : net.pins) {
    min_x = std::min<std::int64_t>(min_x, p.x);
    max_x = std::max<std::int64_t>(max_x, p.x);
    min_y = std::min<std::int64_t>(min_y, p.y);
    max_y = std::max<std::int64_t>(max_y, p.y);
  }
  const std::int64_t extent = std::max<std::int64_t>({max_x - min_x, max_y - min_y, 1});
  const std::int64_t margin = std::max<std::int64_t>(1, extent / 10);
  const std::int64_t caption = std::max<std::int64_t>(1, extent / 12);
  const std::int64_t width = max_x - min_x + 2 * margin;
  const std::int64_t height = max_y - min_y + 2 * margin + caption;
  const std::string stroke = fmt_double(static_cast<double>(extent) / 150.0, 3);
  const std::string radius = fmt_double(static_cast<double>(extent) / 60.0, 3);

  // Grid y grows upward; SVG y grows downward.
  auto sx = [&](std::int64_t x) { return std::to_string(x - min_x + margin); };
  auto sy = [&](std::int64_t y) { return std::to_string(max_y - y + margin); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\" width=\"512\" height=\"" +
         std::to_string(std::max<std::int64_t>(1, 512 * height / width)) + "\">\n";
  out += "<title>" + xml_escape(net.name) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" fill=\"white\"/>\n";
  out += "<g stroke=\"#1f4e99\" stroke-width=\"" + stroke + "\" stroke-linecap=\"round\">\n";
  for (const Segment& s : segments) {
    std::int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    switch (s.orientation) {
      case Orientation::H: x0 = s.lo, x1 = s.hi, y0 = y1 = s.line_key; break;
      case Orientation::V: x0 = x1 = s.line_key, y0 = s.lo, y1 = s.hi; break;
      case Orientation::D45: x0 = s.lo, x1 = s.hi, y0 = s.lo + s.line_key, y1 = s.hi + s.line_key; break;
      case Orientation::D135: x0 = s.lo, x1 = s.hi, y0 = s.line_key - s.lo, y1 = s.line_key - s.hi; break;
    }
    out += "<line x1=\"" + sx(x0) + "\" y1=\"" + sy(y0) + "\" x2=\"" + sx(x1) + "\" y2=\"" +
           sy(y1) + "\"/>\n";
  }
  out += "</g>\n<g fill=\"#c0392b\">\n";
  for (const Point& p : net.pins) {
    out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"" + radius + "\"/>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + std::to_string(margin) + "\" y=\"" +
         std::to_string(height - caption / 3) + "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(std::max<std::int64_t>(1, caption * 2 / 3)) + "\">length " +
         fmt_double(length, 3) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace steiner
