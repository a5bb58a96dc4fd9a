#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "steiner/bench_io.hpp"
#include "steiner/engine.hpp"
#include "steiner/errors.hpp"
#include "steiner/oracle.hpp"

namespace steiner::cli {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("STEINER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("STEINER_SEED is not an integer: '") + env + "'");
    }
  }
  return 1;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'$;&|<>()") == std::string::npos) return s;
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += "'\\''";
    else out += ch;
  }
  return out + "'";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

/// Flags shared by every subcommand that runs the optimizer.
struct RunOptions {
  std::string mode = "x";
  std::size_t pop = 50;
  std::size_t iters = 500;
  std::uint64_t seed = 1;
  std::string stages = "E,PS,E,PS";
  std::size_t k = 2;
  std::string choices;
  std::size_t threads = 1;

  void add_to(CLI::App* app) {
    app->add_option("--mode", mode, "Routing mode: rect or x")->capture_default_str();
    app->add_option("--pop", pop, "Population size")->capture_default_str();
    app->add_option("--iters", iters, "Iterations")->capture_default_str();
    app->add_option("--seed", seed, "Run seed (default: $STEINER_SEED or 1)");
    app->add_option("--stages", stages, "Stage plan, e.g. E,PS,E,PS or CM6")
        ->capture_default_str();
    app->add_option("--k", k, "Mutation points")->capture_default_str();
    app->add_option("--choices", choices, "Override PS choice set, e.g. 01 or 0123");
    app->add_option("--threads", threads, "Worker threads (does not change results)")
        ->capture_default_str();
  }

  RunConfig config() const {
    RunConfig cfg;
    cfg.mode = parse_routing_mode(mode);
    cfg.population = pop;
    cfg.evaluations = iters;
    cfg.seed = seed;
    cfg.stage_plan = StagePlan::parse(stages);
    cfg.mutation_points = k;
    if (!choices.empty()) cfg.choices = ChoiceDomain::parse(choices);
    cfg.threads = threads;
    cfg.check();
    return cfg;
  }

  std::string echo() const {
    std::string s = " --mode " + mode + " --pop " + std::to_string(pop) + " --iters " +
                    std::to_string(iters) + " --seed " + std::to_string(seed) +
                    " --stages " + quote(stages) + " --k " + std::to_string(k);
    if (!choices.empty()) s += " --choices " + choices;
    return s;
  }
};

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InputError("invalid size list '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty size list");
  return out;
}

/// "NAME key=value ..." with keys stages, mode, k, choices.
NamedConfig parse_named_config(const std::string& spec, const RunConfig& base) {
  std::istringstream ss(spec);
  NamedConfig nc;
  if (!(ss >> nc.name)) throw InputError("empty --config");
  nc.config = base;
  std::string item;
  while (ss >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("config item '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "stages") {
      nc.config.stage_plan = StagePlan::parse(value);
    } else if (key == "mode") {
      nc.config.mode = parse_routing_mode(value);
    } else if (key == "k") {
      nc.config.mutation_points = parse_size_list(value).front();
    } else if (key == "choices") {
      nc.config.choices = ChoiceDomain::parse(value);
    } else {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  nc.config.check();
  return nc;
}

const Net& select_net(const NetFile& file, const std::string& name) {
  if (file.nets.empty()) throw InputError("net file contains no nets");
  if (name.empty()) return file.nets.front();
  for (const Net& n : file.nets)
    if (n.name == name) return n;
  throw InputError("no net named '" + name + "'");
}

void emit_report(const Report& report, const std::string& json_path,
                 const std::string& csv_path, std::ostream& out) {
  out << report_rows_csv(report);
  if (!json_path.empty()) write_text(json_path, to_json(report).dump(2) + "\n");
  if (!csv_path.empty()) write_text(csv_path, report_cells_csv(report));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectilinear and X-architecture Steiner tree construction"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  std::uint64_t seed_default = 1;
  try {
    seed_default = default_seed();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  // solve
  auto* solve = app.add_subcommand("solve", "Optimize every net in a net file");
  std::string solve_file, solve_out;
  bool solve_trace = false;
  RunOptions solve_opts;
  solve_opts.seed = seed_default;
  solve->add_option("netfile", solve_file, "Net file")->required();
  solve_opts.add_to(solve);
  solve->add_option("--out", solve_out, "Write JSON results here");
  solve->add_flag("--trace", solve_trace, "Print per-iteration progress to stderr");

  // batch
  auto* batch = app.add_subcommand("batch", "Repeated runs per net with best/mean/stddev");
  std::string batch_file, batch_json;
  std::size_t batch_repeats = 20;
  RunOptions batch_opts;
  batch_opts.seed = seed_default;
  batch->add_option("netfile", batch_file, "Net file")->required();
  batch_opts.add_to(batch);
  batch->add_option("--repeats", batch_repeats, "Runs per net")->capture_default_str();
  batch->add_option("--json", batch_json, "Write JSON report here");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Compare named configurations");
  std::string ablate_file, ablate_json, ablate_csv, ablate_baseline;
  std::vector<std::string> ablate_configs;
  std::size_t ablate_repeats = 5;
  RunOptions ablate_opts;
  ablate_opts.seed = seed_default;
  ablate->add_option("netfile", ablate_file, "Net file")->required();
  ablate_opts.add_to(ablate);
  ablate->add_option("--config", ablate_configs,
                     "\"NAME [stages=..] [mode=..] [k=..] [choices=..]\" (repeatable)")
      ->required();
  ablate->add_option("--baseline", ablate_baseline, "Baseline config name (default: first)");
  ablate->add_option("--repeats", ablate_repeats, "Runs per net and config")
      ->capture_default_str();
  ablate->add_option("--json", ablate_json, "Write JSON report here");
  ablate->add_option("--csv", ablate_csv, "Write per-net CSV here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Every stage plan of a given depth vs rectilinear");
  std::string sweep_file, sweep_json, sweep_csv;
  std::size_t sweep_depth = 2, sweep_repeats = 5;
  RunOptions sweep_opts;
  sweep_opts.seed = seed_default;
  sweep->add_option("netfile", sweep_file, "Net file")->required();
  sweep_opts.add_to(sweep);
  sweep->add_option("--depth", sweep_depth, "Number of stages (1-6)")->capture_default_str();
  sweep->add_option("--repeats", sweep_repeats, "Runs per net and plan")
      ->capture_default_str();
  sweep->add_option("--json", sweep_json, "Write JSON report here");
  sweep->add_option("--csv", sweep_csv, "Write per-net CSV here");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference lengths for tiny nets");
  std::string oracle_file, oracle_mode = "x", oracle_choices;
  bool want_exact = false, want_space = false, want_mst = false;
  oracle_cmd->add_option("netfile", oracle_file, "Net file")->required();
  oracle_cmd->add_flag("--exact-rsmt", want_exact, "Exact RSMT (<= 6 pins)");
  oracle_cmd->add_flag("--best-in-space", want_space, "Best particle by enumeration (<= 5 pins)");
  oracle_cmd->add_flag("--mst", want_mst, "Manhattan and octilinear MST lengths");
  oracle_cmd->add_option("--mode", oracle_mode, "Choice set for --best-in-space: rect or x")
      ->capture_default_str();
  oracle_cmd->add_option("--choices", oracle_choices, "Override PS choice set");

  // render
  auto* render = app.add_subcommand("render", "Draw a routed tree as SVG");
  std::string render_file, render_net, render_particle, render_out;
  RunOptions render_opts;
  render_opts.seed = seed_default;
  render->add_option("netfile", render_file, "Net file")->required();
  render->add_option("--net", render_net, "Net name (default: first)");
  render->add_option("--particle", render_particle,
                     "Particle string over the file's pin order; solves when omitted");
  render_opts.add_to(render);
  render->add_option("--out", render_out, "Write SVG here instead of stdout");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random net file");
  std::string gen_sizes = "8,10,20", gen_range = "0,1000", gen_out;
  std::size_t gen_per = 1;
  std::uint64_t gen_seed = seed_default;
  gen->add_option("--sizes", gen_sizes, "Comma-separated pin counts")->capture_default_str();
  gen->add_option("--per-size", gen_per, "Nets per size")->capture_default_str();
  gen->add_option("--range", gen_range, "Coordinate range lo,hi")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed (default: $STEINER_SEED or 1)");
  gen->add_option("--out", gen_out, "Write net file here instead of stdout");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      const RunConfig cfg = solve_opts.config();
      err << "# steiner solve " << quote(solve_file) << solve_opts.echo() << "\n";
      const NetFile file = read_netfile(solve_file);
      if (file.duplicates_dropped) {
        err << "warning: dropped " << file.duplicates_dropped << " duplicate pins\n";
      }
      nlohmann::json results = nlohmann::json::array();
      for (const Net& net : file.nets) {
        Observer observer;
        if (solve_trace) {
          observer = [&](const IterationInfo& it) {
            err << "iter " << it.iteration << " w " << fmt(it.w) << " c1 " << fmt(it.c1)
                << " c2 " << fmt(it.c2) << " mode " << to_string(it.mode) << " gbest "
                << fmt(it.gbest_length) << "\n";
          };
        }
        const RunResult r = steiner::run(net, cfg, observer);
        out << "net " << net.name << " pins " << r.net.size() << " length "
            << fmt(r.best_length) << " fitness " << fmt(r.best_fitness, 6) << "\n";
        out << "particle " << serialize(r.best, r.best_fitness) << "\n";
        results.push_back(to_json(r));
      }
      if (!solve_out.empty()) {
        nlohmann::json doc{{"config", to_json(cfg)}, {"results", results}};
        write_text(solve_out, doc.dump(2) + "\n");
      }
    } else if (*batch) {
      const RunConfig cfg = batch_opts.config();
      err << "# steiner batch " << quote(batch_file) << batch_opts.echo() << " --repeats "
          << batch_repeats << "\n";
      const NetFile file = read_netfile(batch_file);
      const NamedConfig named{"run", cfg};
      const Report report = ablation_table(file.nets, {&named, 1}, batch_repeats, named);
      // Cells hold the baseline runs only once here.
      out << "net,best,mean,stddev\n";
      for (std::size_t i = 0; i < file.nets.size(); ++i) {
        const auto& c = report.cells[i];
        out << c.net << "," << fmt(c.stats.best) << "," << fmt(c.stats.mean) << ","
            << fmt(c.stats.stddev) << "\n";
      }
      if (!batch_json.empty()) write_text(batch_json, to_json(report).dump(2) + "\n");
    } else if (*ablate) {
      const RunConfig base = ablate_opts.config();
      std::vector<NamedConfig> configs;
      for (const auto& spec : ablate_configs) configs.push_back(parse_named_config(spec, base));
      const std::string baseline_name =
          ablate_baseline.empty() ? configs.front().name : ablate_baseline;
      const NamedConfig* baseline = nullptr;
      for (const auto& c : configs)
        if (c.name == baseline_name) baseline = &c;
      if (!baseline) throw InputError("baseline '" + baseline_name + "' is not a --config name");
      err << "# steiner ablate " << quote(ablate_file) << ablate_opts.echo();
      for (const auto& spec : ablate_configs) err << " --config " << quote(spec);
      err << " --baseline " << baseline_name << " --repeats " << ablate_repeats << "\n";
      const NetFile file = read_netfile(ablate_file);
      emit_report(ablation_table(file.nets, configs, ablate_repeats, *baseline), ablate_json,
                  ablate_csv, out);
    } else if (*sweep) {
      const RunConfig base = sweep_opts.config();
      std::vector<NamedConfig> configs;
      std::size_t index = 1;
      for (const StagePlan& plan : StagePlan::enumerate(sweep_depth)) {
        NamedConfig nc{"CM" + std::to_string(index++), base};
        nc.config.stage_plan = plan;
        configs.push_back(std::move(nc));
      }
      NamedConfig baseline{"RSMT", base};
      baseline.config.mode = RoutingMode::Rectilinear;
      baseline.config.choices.reset();
      err << "# steiner sweep " << quote(sweep_file) << sweep_opts.echo() << " --depth "
          << sweep_depth << " --repeats " << sweep_repeats << "\n";
      const NetFile file = read_netfile(sweep_file);
      emit_report(ablation_table(file.nets, configs, sweep_repeats, baseline), sweep_json,
                  sweep_csv, out);
    } else if (*oracle_cmd) {
      err << "# steiner oracle " << quote(oracle_file) << " --mode " << oracle_mode
          << (oracle_choices.empty() ? "" : " --choices " + oracle_choices)
          << (want_exact ? " --exact-rsmt" : "") << (want_space ? " --best-in-space" : "")
          << (want_mst ? " --mst" : "") << "\n";
      if (!want_exact && !want_space && !want_mst) want_exact = true;
      const ChoiceDomain domain = oracle_choices.empty()
                                      ? ChoiceDomain(parse_routing_mode(oracle_mode))
                                      : ChoiceDomain::parse(oracle_choices);
      const NetFile file = read_netfile(oracle_file);
      for (const Net& net : file.nets) {
        out << "net " << net.name;
        if (want_exact) out << " exact_rsmt " << fmt(oracle::exact_rsmt(net));
        if (want_space) out << " best_in_space " << fmt(oracle::best_in_space_xsmt(net, domain));
        if (want_mst) {
          out << " mst_manhattan " << fmt(oracle::mst_length(net.pins, oracle::Metric::Manhattan))
              << " mst_octilinear "
              << fmt(oracle::mst_length(net.pins, oracle::Metric::Octilinear));
        }
        out << "\n";
      }
    } else if (*render) {
      const NetFile file = read_netfile(render_file);
      const Net& net = select_net(file, render_net);
      std::string svg;
      if (!render_particle.empty()) {
        err << "# steiner render " << quote(render_file) << " --net " << net.name
            << " --particle " << quote(render_particle) << "\n";
        const auto parsed = parse_particle(render_particle, net.size());
        if (!validate(net, parsed.particle)) {
          throw InputError("particle is not a spanning tree of net '" + net.name + "'");
        }
        svg = render_svg(net, parsed.particle);
      } else {
        const RunConfig cfg = render_opts.config();
        err << "# steiner render " << quote(render_file) << " --net " << net.name
            << render_opts.echo() << "\n";
        const RunResult r = steiner::run(net, cfg);
        svg = render_svg(r.net, r.best);
      }
      if (render_out.empty()) out << svg;
      else write_text(render_out, svg);
    } else if (*gen) {
      const auto sizes = parse_size_list(gen_sizes);
      const auto comma = gen_range.find(',');
      if (comma == std::string::npos) throw InputError("--range must be lo,hi");
      std::int32_t lo = 0, hi = 0;
      try {
        lo = std::stoi(gen_range.substr(0, comma));
        hi = std::stoi(gen_range.substr(comma + 1));
      } catch (const std::exception&) {
        throw InputError("invalid --range '" + gen_range + "'");
      }
      err << "# steiner gen --sizes " << gen_sizes << " --per-size " << gen_per << " --range "
          << gen_range << " --seed " << gen_seed << "\n";
      const auto nets = generate_random_suite(sizes, gen_per, lo, hi, gen_seed);
      const std::string text = serialize_netfile(nets);
      if (gen_out.empty()) out << text;
      else write_text(gen_out, text);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace steiner::cli
