#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "steiner/bench_io.hpp"
#include "steiner/errors.hpp"

using namespace steiner;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_netfile(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.population = 10;
  cfg.evaluations = 20;
  return cfg;
}

}  // namespace

TEST_CASE("net file parsing") {
  const auto file = parse_netfile(
      "# two nets\n"
      "net a 3\n"
      "0 0\n"
      "4 2   # trailing comment\n"
      "\n"
      "-1 7\n"
      "net b 3\n"
      "1 1\n"
      "1 1\n"
      "2 2\n");
  REQUIRE(file.nets.size() == 2);
  CHECK(file.nets[0].name == "a");
  CHECK(file.nets[0].pins == std::vector<Point>{{0, 0}, {4, 2}, {-1, 7}});
  CHECK(file.nets[1].size() == 2);
  CHECK(file.duplicates_dropped == 1);
  CHECK(parse_netfile("").nets.empty());
  CHECK(parse_netfile("net w 2\r\n0 0\r\n1 1\r\n").nets.size() == 1);
}

TEST_CASE("net file errors carry line numbers") {
  CHECK(error_line("net a 2\n0 0\n1 x\n") == 3);
  CHECK(error_line("0 0\n") == 1);
  CHECK(error_line("net a\n") == 1);
  CHECK(error_line("net a 3\n0 0\n1 1\nnet b 2\n0 0\n1 0\n") == 1);
  CHECK(error_line("net a 2\n0 0\n1 1\n2 2\n") == 1);
  CHECK(error_line("# c\nnet a 2\n5 5\n5 5\n") == 2);
  CHECK(error_line("net a 1\n0 0\n") == 1);
  CHECK(error_line("net a 2\n0 0 0\n1 1\n") == 2);
  CHECK(error_line("net a 2\n0 0\n99999999999 1\n") == 3);
  try {
    parse_netfile("net a 2\n0 0\n1 x\n");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
}

TEST_CASE("net file round trip and fixtures") {
  const Net t1 = testing::table1_net();
  const std::vector<Net> nets{t1, testing::unit_square()};
  const auto back = parse_netfile(serialize_netfile(nets));
  CHECK(back.nets == nets);
  const auto fixture = read_netfile(testing::fixture("table1.net"));
  REQUIRE(fixture.nets.size() == 1);
  CHECK(fixture.nets[0].pins == t1.pins);
  CHECK_THROWS_AS(read_netfile(testing::fixture("missing.net")), InputError);
}

TEST_CASE("random suite generator") {
  const std::vector<std::size_t> sizes{5, 9};
  const auto a = generate_random_suite(sizes, 3, 0, 50, 7);
  const auto b = generate_random_suite(sizes, 3, 0, 50, 7);
  REQUIRE(a.size() == 6);
  CHECK(a == b);
  CHECK(a[0].name == "r5_0");
  CHECK(a[5].name == "r9_2");
  for (const Net& net : a) {
    CHECK(net.normalized().size() == net.size());
    for (const Point& p : net.pins) {
      CHECK(p.x >= 0);
      CHECK(p.x <= 50);
      CHECK(p.y >= 0);
      CHECK(p.y <= 50);
    }
  }
  CHECK(generate_random_suite(sizes, 3, 0, 50, 8) != a);
  const std::vector<std::size_t> crowded{5};
  CHECK_THROWS_AS(generate_random_suite(crowded, 1, 0, 1, 1), InputError);
  CHECK(generate_random_suite(std::vector<std::size_t>{4}, 1, 0, 1, 1)[0].size() == 4);
}

TEST_CASE("improvement percentage") {
  CHECK(improvement_pct(100.0, 90.0) == doctest::Approx(10.0));
  CHECK(improvement_pct(100.0, 110.0) == doctest::Approx(-10.0));
  CHECK(improvement_pct(0.0, 5.0) == 0.0);
}

TEST_CASE("ablation table") {
  const auto nets = generate_random_suite(std::vector<std::size_t>{6}, 2, 0, 30, 3);
  NamedConfig base{"R", tiny_config()};
  base.config.mode = RoutingMode::Rectilinear;
  const std::vector<NamedConfig> configs{{"X", tiny_config()}, base};
  const Report report = ablation_table(nets, configs, 2, base);

  CHECK(report.nets.size() == 2);
  REQUIRE(report.cells.size() == 2 + 2 * 2);
  CHECK(report.cells[0].config == "R");
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[1].config == "R");
  CHECK(report.rows[1].mean_improvement_pct == 0.0);
  CHECK(report.cells[4].stats.lengths == report.cells[0].stats.lengths);
  CHECK(report.rows[0].mean_improvement_pct >= 0.0);

  const double expected =
      (improvement_pct(report.cells[0].stats.mean, report.cells[2].stats.mean) +
       improvement_pct(report.cells[1].stats.mean, report.cells[3].stats.mean)) /
      2.0;
  CHECK(report.rows[0].mean_improvement_pct == doctest::Approx(expected));

  const Report empty = ablation_table({}, configs, 1, base);
  CHECK(empty.rows.empty());
  CHECK(empty.cells.empty());
}

TEST_CASE("JSON and CSV exports") {
  const auto nets = generate_random_suite(std::vector<std::size_t>{5}, 1, 0, 20, 4);
  const NamedConfig base{"base", tiny_config()};
  const std::vector<NamedConfig> configs{{"odd,name", tiny_config()}};
  const Report report = ablation_table(nets, configs, 1, base);

  const auto j = nlohmann::json::parse(to_json(report).dump());
  CHECK(j["rows"].size() == 1);
  CHECK(j["cells"].size() == 2);
  CHECK(j["baseline"]["config"]["stages"] == "E,PS,E,PS");
  CHECK(j["cells"][0].contains("seconds"));
  CHECK_FALSE(to_json(report, false)["cells"][0].contains("seconds"));

  const std::string rows = report_rows_csv(report);
  CHECK(rows.rfind("config,mean_improvement_pct,mean_length\n", 0) == 0);
  CHECK(rows.find("\"odd,name\"") != std::string::npos);
  CHECK(count(rows, "\n") == 2);
  CHECK(count(report_cells_csv(report), "\n") == 3);
  CHECK(report_cells_csv(report, false).find("seconds") == std::string::npos);

  const RunResult res = run(nets[0], tiny_config());
  const auto rj = to_json(res, false);
  CHECK(rj["history"].size() == 21);
  CHECK(rj["length"] == res.best_length);
  CHECK(parse_particle(rj["particle"].get<std::string>(), nets[0].size()).particle == res.best);
}

TEST_CASE("SVG rendering") {
  const Net net = testing::table1_net();
  const auto parsed = parse_particle("7 6 0 6 4 1 7 5 1 5 1 2 1 3 0 1 8 1 5 2 2 10.0100");
  const std::string svg = render_svg(net, parsed.particle);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<circle") == net.size());
  CHECK(count(svg, "<line") == tree_segments(net, parsed.particle).size());
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg == slurp(std::string(STEINER_GOLDEN_DIR) + "/table1.svg"));

  const Net odd{"a<b&c", {{0, 0}, {0, 0 + 3}}};
  const std::string escaped = render_svg(odd, Particle({{1, 2, PsChoice::C0}}));
  CHECK(escaped.find("<title>a&lt;b&amp;c</title>") != std::string::npos);
  CHECK(escaped.find("length 3.000") != std::string::npos);
  CHECK_THROWS_AS(render_svg(odd, Particle({{1, 1, PsChoice::C0}})), InvariantError);
}
