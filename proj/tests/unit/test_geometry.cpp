#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "steiner/errors.hpp"
#include "steiner/geometry.hpp"
#include "steiner/oracle.hpp"

using namespace steiner;

namespace {

constexpr PsChoice kAllChoices[] = {PsChoice::C0, PsChoice::C1, PsChoice::C2, PsChoice::C3};

double total_length(const std::vector<Segment>& segs) {
  double sum = 0.0;
  for (const auto& s : segs) sum += segment_length(s);
  return sum;
}

// Endpoints of a segment in grid coordinates.
std::pair<Point, Point> endpoints(const Segment& s) {
  auto P = [](std::int64_t x, std::int64_t y) {
    return Point{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
  };
  switch (s.orientation) {
    case Orientation::H: return {P(s.lo, s.line_key), P(s.hi, s.line_key)};
    case Orientation::V: return {P(s.line_key, s.lo), P(s.line_key, s.hi)};
    case Orientation::D45: return {P(s.lo, s.lo + s.line_key), P(s.hi, s.hi + s.line_key)};
    case Orientation::D135: return {P(s.lo, s.line_key - s.lo), P(s.hi, s.line_key - s.hi)};
  }
  return {};
}

Segment random_segment(Rng& rng, Orientation o, std::int64_t key) {
  const auto a = uniform_int<std::int64_t>(rng, -30, 30);
  const auto b = uniform_int<std::int64_t>(rng, -30, 30);
  return {o, key, std::min(a, b), std::max(a, b)};
}

}  // namespace

TEST_CASE("expand_edge: pure diagonal is one D45 segment") {
  const auto segs = expand_edge({0, 0}, {3, 3}, PsChoice::C0);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].orientation == Orientation::D45);
  CHECK(total_length(segs) == doctest::Approx(3 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(total_length(segs) == doctest::Approx(4.2426).epsilon(1e-4));
}

TEST_CASE("expand_edge: C0 goes horizontal then diagonal on a wide edge") {
  const auto segs = expand_edge({0, 0}, {4, 2}, PsChoice::C0);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == Segment{Orientation::H, 0, 0, 2});
  CHECK(segs[1] == Segment{Orientation::D45, -2, 2, 4});
  CHECK(total_length(segs) == doctest::Approx(2 + 2 * std::sqrt(2.0)));
}

TEST_CASE("expand_edge: C2 goes vertical then horizontal") {
  const auto segs = expand_edge({0, 0}, {4, 2}, PsChoice::C2);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == Segment{Orientation::V, 0, 0, 2});
  CHECK(segs[1] == Segment{Orientation::H, 2, 0, 4});
  CHECK(total_length(segs) == 6.0);
}

TEST_CASE("expand_edge: bend points for tall and descending edges") {
  // Tall edge (|dy| > dx), ascending.
  CHECK(bend_point({0, 0}, {2, 5}, PsChoice::C0) == Point{0, 3});
  CHECK(bend_point({0, 0}, {2, 5}, PsChoice::C1) == Point{2, 2});
  // Wide edge, descending.
  CHECK(bend_point({0, 4}, {6, 0}, PsChoice::C0) == Point{2, 4});
  CHECK(bend_point({0, 4}, {6, 0}, PsChoice::C1) == Point{4, 0});
  CHECK(bend_point({0, 4}, {6, 0}, PsChoice::C2) == Point{0, 0});
  CHECK(bend_point({0, 4}, {6, 0}, PsChoice::C3) == Point{6, 4});
  // Endpoint order does not matter.
  for (PsChoice c : kAllChoices) {
    CHECK(bend_point({6, 0}, {0, 4}, c) == bend_point({0, 4}, {6, 0}, c));
    CHECK(expand_edge({6, 0}, {0, 4}, c) == expand_edge({0, 4}, {6, 0}, c));
  }
}

TEST_CASE("expand_edge: degenerate edges") {
  for (PsChoice c : kAllChoices) {
    CHECK(expand_edge({1, 1}, {1, 1}, c).empty());
    CHECK(expand_edge({0, 0}, {0, 7}, c).size() == 1);
    CHECK(expand_edge({0, 0}, {7, 0}, c).size() == 1);
  }
  CHECK(expand_edge({0, 0}, {3, -3}, PsChoice::C0) == expand_edge({0, 0}, {3, -3}, PsChoice::C1));
  CHECK(expand_edge({0, 0}, {3, -3}, PsChoice::C1).front().orientation == Orientation::D135);
  // Rectilinear choices keep their bend on a 45-degree pair.
  CHECK(expand_edge({0, 0}, {3, 3}, PsChoice::C2).size() == 2);
  CHECK(total_length(expand_edge({0, 0}, {3, 3}, PsChoice::C3)) == 6.0);
}

TEST_CASE("expand_edge: every choice is a shortest path of its kind and chains a to b") {
  Rng rng = make_stream(11, 0);
  for (int iter = 0; iter < 2000; ++iter) {
    const Point a{uniform_int(rng, -50, 50), uniform_int(rng, -50, 50)};
    const Point b{uniform_int(rng, -50, 50), uniform_int(rng, -50, 50)};
    for (PsChoice c : kAllChoices) {
      const auto segs = expand_edge(a, b, c);
      const double len = total_length(segs);
      CHECK(len >= octilinear_distance(a, b) - 1e-9);
      if (c == PsChoice::C0 || c == PsChoice::C1) {
        CHECK(len == doctest::Approx(octilinear_distance(a, b)).epsilon(1e-12));
      } else {
        CHECK(len == static_cast<double>(manhattan_distance(a, b)));
      }
      CHECK(segs == oracle::reference_expand(a, b, c));

      // Chain: the multiset of segment endpoints reduces to {a, b}.
      std::vector<Point> ends;
      for (const auto& s : segs) {
        const auto [p, q] = endpoints(s);
        ends.push_back(p);
        ends.push_back(q);
      }
      std::sort(ends.begin(), ends.end());
      std::vector<Point> odd;
      for (std::size_t i = 0; i < ends.size();) {
        std::size_t j = i;
        while (j < ends.size() && ends[j] == ends[i]) ++j;
        if ((j - i) % 2 == 1) odd.push_back(ends[i]);
        i = j;
      }
      if (a == b) {
        CHECK(odd.empty());
      } else {
        std::vector<Point> want{a, b};
        std::sort(want.begin(), want.end());
        CHECK(odd == want);
      }
    }
  }
}

TEST_CASE("union_length: interval union and orientation separation") {
  const std::vector<Segment> overlap{{Orientation::H, 0, 0, 3}, {Orientation::H, 0, 2, 5}};
  CHECK(union_length(overlap) == 5.0);
  const std::vector<Segment> cross{{Orientation::H, 0, 0, 3}, {Orientation::V, 0, 0, 3}};
  CHECK(union_length(cross) == 6.0);
  const std::vector<Segment> diag{{Orientation::D45, 0, 0, 2}, {Orientation::D45, 0, 1, 3}};
  CHECK(union_length(diag) == doctest::Approx(3 * std::sqrt(2.0)));
  CHECK(union_length(std::vector<Segment>{}) == 0.0);
}

TEST_CASE("union_length: 20 segments on one line match the pairwise oracle") {
  Rng rng = make_stream(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Segment> segs;
    const auto o = static_cast<Orientation>(trial % 4);
    for (int i = 0; i < 20; ++i) segs.push_back(random_segment(rng, o, 7));
    CHECK(union_length(segs) == doctest::Approx(oracle::pairwise_union_length(segs)).epsilon(1e-12));
  }
}

TEST_CASE("union_length: permutation, splitting and subadditivity") {
  Rng rng = make_stream(13, 0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Segment> segs;
    const int count = uniform_int(rng, 1, 25);
    for (int i = 0; i < count; ++i) {
      const auto o = static_cast<Orientation>(uniform_int(rng, 0, 3));
      segs.push_back(random_segment(rng, o, uniform_int(rng, -2, 2)));
    }
    const double base = union_length(segs);

    auto shuffled = segs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(union_length(shuffled) == doctest::Approx(base).epsilon(1e-12));

    // Split one non-degenerate segment at an interior grid point.
    auto split = segs;
    for (std::size_t i = 0; i < split.size(); ++i) {
      if (split[i].hi - split[i].lo >= 2) {
        const auto mid = uniform_int(rng, split[i].lo + 1, split[i].hi - 1);
        Segment right = split[i];
        right.lo = mid;
        split[i].hi = mid;
        split.push_back(right);
        break;
      }
    }
    CHECK(std::abs(union_length(split) - base) <= 1e-9);

    const std::size_t cut = uniform_int<std::size_t>(rng, 0, segs.size());
    const std::vector<Segment> left(segs.begin(), segs.begin() + cut);
    const std::vector<Segment> right(segs.begin() + cut, segs.end());
    CHECK(base <= union_length(left) + union_length(right) + 1e-9);

    double naive = 0.0;
    for (const auto& s : segs) naive += segment_length(s);
    CHECK(base <= naive + 1e-9);
  }
}

TEST_CASE("tree_length: collinear pins and the eight-pin example string") {
  const Net two{"two", {{0, 0}, {5, 0}}};
  for (PsChoice c : kAllChoices) CHECK(tree_length(two, Particle({{1, 2, c}})) == 5.0);

  const auto parsed = parse_particle("7 6 0 6 4 1 7 5 1 5 1 2 1 3 0 1 8 1 5 2 2 10.0100");
  const double len = tree_length(testing::table1_net(), parsed.particle);
  CHECK(std::isfinite(len));
  CHECK(len > 0.0);
  CHECK(len == doctest::Approx(oracle::reference_tree_length(testing::table1_net(),
                                                             parsed.particle.edges())));
}

TEST_CASE("tree_length: random 6-pin trees match the pairwise oracle") {
  Rng rng = make_stream(14, 0);
  const ChoiceDomain all(RoutingMode::XArch);
  for (int trial = 0; trial < 500; ++trial) {
    const Net net = testing::random_net(rng, 6, 8);
    const Particle p = random_spanning_tree(net, all, rng);
    CHECK(tree_length(net, p) ==
          doctest::Approx(oracle::reference_tree_length(net, p.edges())).epsilon(1e-12));
  }
}

TEST_CASE("tree_length: rectilinear trees have integer length") {
  Rng rng = make_stream(15, 0);
  const ChoiceDomain rect(RoutingMode::Rectilinear);
  for (int trial = 0; trial < 300; ++trial) {
    const Net net = testing::random_net(rng, uniform_int<std::size_t>(rng, 2, 30), 40);
    const double len = tree_length(net, random_spanning_tree(net, rect, rng));
    CHECK(std::abs(len - std::round(len)) <= 1e-9);
  }
}

TEST_CASE("tree_length: rejects a particle that is not a spanning tree") {
  const Net net{"three", {{0, 0}, {1, 0}, {2, 0}}};
  CHECK_THROWS_AS(tree_length(net, Particle({{1, 2, PsChoice::C0}, {1, 2, PsChoice::C0}})),
                  InvariantError);
  CHECK_THROWS_AS(tree_length(net, Particle({{1, 2, PsChoice::C0}})), InvariantError);
}
