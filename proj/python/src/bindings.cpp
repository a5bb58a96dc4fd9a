#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steiner/bench_io.hpp"
#include "steiner/engine.hpp"
#include "steiner/errors.hpp"
#include "steiner/geometry.hpp"
#include "steiner/oracle.hpp"
#include "steiner/tree_encoding.hpp"

namespace py = pybind11;
using namespace steiner;

namespace {

Net to_net(const py::object& obj, const std::string& name) {
  if (py::isinstance<Net>(obj)) return obj.cast<Net>();
  Net net{name, {}};
  for (const auto& item : obj) {
    if (py::isinstance<Point>(item)) {
      net.pins.push_back(item.cast<Point>());
      continue;
    }
    const auto pair = item.cast<std::pair<std::int32_t, std::int32_t>>();
    net.pins.push_back({pair.first, pair.second});
  }
  return net;
}

ChoiceDomain to_domain(const std::string& mode, const std::optional<std::string>& choices) {
  return choices ? ChoiceDomain::parse(*choices) : ChoiceDomain(parse_routing_mode(mode));
}

RunConfig make_config(const std::string& mode, std::size_t population, std::size_t iterations,
                      std::uint64_t seed, const std::string& stages, std::size_t k,
                      const std::optional<std::string>& choices, std::size_t threads) {
  RunConfig cfg;
  cfg.mode = parse_routing_mode(mode);
  cfg.population = population;
  cfg.evaluations = iterations;
  cfg.seed = seed;
  cfg.stage_plan = StagePlan::parse(stages);
  cfg.mutation_points = k;
  if (choices) cfg.choices = ChoiceDomain::parse(*choices);
  cfg.threads = threads;
  cfg.check();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rectilinear and X-architecture Steiner trees by discrete particle swarm";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<Point>(m, "Point")
      .def(py::init<std::int32_t, std::int32_t>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
      .def("__iter__", [](const Point& p) { return py::iter(py::make_tuple(p.x, p.y)); })
      .def("__repr__", [](const Point& p) {
        return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<Net>(m, "Net")
      .def(py::init([](std::string name, const py::object& pins) { return to_net(pins, name); }),
           py::arg("name"), py::arg("pins"))
      .def_readwrite("name", &Net::name)
      .def_property_readonly("pins", [](const Net& n) { return n.pins; })
      .def("__len__", &Net::size)
      .def("normalized", &Net::normalized)
      .def("__repr__", [](const Net& n) {
        return "Net('" + n.name + "', " + std::to_string(n.size()) + " pins)";
      });

  py::class_<Particle>(m, "Particle")
      .def_static(
          "parse", [](const std::string& text) { return parse_particle(text).particle; },
          py::arg("text"))
      .def_property_readonly("edges",
                             [](const Particle& p) {
                               std::vector<std::tuple<PinId, PinId, int>> out;
                               for (const Edge& e : p.edges())
                                 out.emplace_back(e.u, e.v, static_cast<int>(e.choice));
                               return out;
                             })
      .def("__len__", &Particle::size)
      .def("__eq__", [](const Particle& a, const Particle& b) { return a == b; })
      .def("to_string", [](const Particle& p, double fitness) { return serialize(p, fitness); },
           py::arg("fitness"));

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("net", &RunResult::net)
      .def_readonly("best", &RunResult::best)
      .def_readonly("length", &RunResult::best_length)
      .def_readonly("fitness", &RunResult::best_fitness)
      .def_readonly("history", &RunResult::history)
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("wall_seconds", &RunResult::wall_seconds)
      .def_property_readonly("particle", [](const RunResult& r) {
        return serialize(r.best, r.best_fitness);
      });

  py::class_<RunStats>(m, "RunStats")
      .def_readonly("best", &RunStats::best)
      .def_readonly("mean", &RunStats::mean)
      .def_readonly("stddev", &RunStats::stddev)
      .def_readonly("lengths", &RunStats::lengths)
      .def_readonly("seeds", &RunStats::seeds);

  m.def("fitness", &fitness_of, py::arg("length"));
  m.def("schedule", &schedule, py::arg("start"), py::arg("end"), py::arg("iteration"),
        py::arg("iterations"));

  m.def(
      "tree_length",
      [](const py::object& pins, const Particle& p) { return tree_length(to_net(pins, "net"), p); },
      py::arg("net"), py::arg("particle"));

  m.def(
      "solve",
      [](const py::object& pins, const std::string& mode, std::size_t population,
         std::size_t iterations, std::uint64_t seed, const std::string& stages, std::size_t k,
         const std::optional<std::string>& choices, std::size_t threads) {
        const Net net = to_net(pins, "net");
        const RunConfig cfg =
            make_config(mode, population, iterations, seed, stages, k, choices, threads);
        py::gil_scoped_release release;
        return run(net, cfg);
      },
      py::arg("net"), py::arg("mode") = "x", py::arg("population") = 50,
      py::arg("iterations") = 500, py::arg("seed") = 1, py::arg("stages") = "E,PS,E,PS",
      py::arg("k") = 2, py::arg("choices") = std::nullopt, py::arg("threads") = 1);

  m.def(
      "solve_many",
      [](const py::object& pins, std::size_t repeats, const std::string& mode,
         std::size_t population, std::size_t iterations, std::uint64_t seed,
         const std::string& stages, std::size_t k, const std::optional<std::string>& choices) {
        const Net net = to_net(pins, "net");
        const RunConfig cfg = make_config(mode, population, iterations, seed, stages, k, choices, 1);
        py::gil_scoped_release release;
        return run_many(net, cfg, repeats);
      },
      py::arg("net"), py::arg("repeats"), py::arg("mode") = "x", py::arg("population") = 50,
      py::arg("iterations") = 500, py::arg("seed") = 1, py::arg("stages") = "E,PS,E,PS",
      py::arg("k") = 2, py::arg("choices") = std::nullopt);

  m.def(
      "exact_rsmt", [](const py::object& pins) { return oracle::exact_rsmt(to_net(pins, "net")); },
      py::arg("net"));
  m.def(
      "best_in_space",
      [](const py::object& pins, const std::string& mode, const std::optional<std::string>& choices) {
        return oracle::best_in_space_xsmt(to_net(pins, "net"), to_domain(mode, choices));
      },
      py::arg("net"), py::arg("mode") = "x", py::arg("choices") = std::nullopt);
  m.def(
      "mst_length",
      [](const py::object& pins, const std::string& metric) {
        const Net net = to_net(pins, "net");
        if (metric == "manhattan") return oracle::mst_length(net.pins, oracle::Metric::Manhattan);
        if (metric == "octilinear") return oracle::mst_length(net.pins, oracle::Metric::Octilinear);
        throw InputError("metric must be 'manhattan' or 'octilinear'");
      },
      py::arg("net"), py::arg("metric") = "manhattan");

  m.def(
      "parse_netfile", [](const std::string& text) { return parse_netfile(text).nets; },
      py::arg("text"));
  m.def(
      "read_netfile", [](const std::string& path) { return read_netfile(path).nets; },
      py::arg("path"));
  m.def(
      "render_svg",
      [](const py::object& pins, const Particle& p) { return render_svg(to_net(pins, "net"), p); },
      py::arg("net"), py::arg("particle"));
}
