#pragma once

#include <set>
#include <string>

#include "steiner/rng.hpp"
#include "steiner/tree_encoding.hpp"

namespace steiner::testing {

inline Net table1_net() {
  return {"table1", {{33, 33}, {2, 9}, {42, 35}, {47, 2}, {34, 1}, {38, 2}, {37, 5}, {20, 4}}};
}

inline Net unit_square() { return {"square", {{0, 0}, {1, 0}, {0, 1}, {1, 1}}}; }

inline Net random_net(Rng& rng, std::size_t n, std::int32_t range = 20) {
  Net net{"rand" + std::to_string(n), {}};
  std::set<Point> used;
  while (net.pins.size() < n) {
    const Point p{uniform_int<std::int32_t>(rng, 0, range), uniform_int<std::int32_t>(rng, 0, range)};
    if (used.insert(p).second) net.pins.push_back(p);
  }
  return net;
}

inline std::string fixture(const std::string& name) {
  return std::string(STEINER_FIXTURE_DIR) + "/" + name;
}

}  // namespace steiner::testing
