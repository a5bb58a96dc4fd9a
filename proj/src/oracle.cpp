#include "steiner/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "steiner/errors.hpp"

namespace steiner::oracle {

namespace {

bool same_line(const Segment& a, const Segment& b) {
  return a.orientation == b.orientation && a.line_key == b.line_key;
}

struct Interval {
  std::int64_t lo, hi;
};

// Removes [cut.lo, cut.hi] from every piece.
std::vector<Interval> subtract(const std::vector<Interval>& pieces, Interval cut) {
  std::vector<Interval> out;
  for (const Interval& p : pieces) {
    if (cut.hi <= p.lo || cut.lo >= p.hi) {
      out.push_back(p);
      continue;
    }
    if (cut.lo > p.lo) out.push_back({p.lo, cut.lo});
    if (cut.hi < p.hi) out.push_back({cut.hi, p.hi});
  }
  return out;
}

// Line classification from two endpoints, written independently of
// make_segment.
std::optional<Segment> classify(Point p, Point q) {
  const std::int64_t px = p.x, py = p.y, qx = q.x, qy = q.y;
  if (px == qx && py == qy) return std::nullopt;
  Segment s;
  if (py == qy) {
    s.orientation = Orientation::H;
    s.line_key = py;
  } else if (px == qx) {
    s.orientation = Orientation::V;
    s.line_key = px;
    s.lo = std::min(py, qy);
    s.hi = std::max(py, qy);
    return s;
  } else if ((qx - px) * (qy - py) > 0 && std::abs(qx - px) == std::abs(qy - py)) {
    s.orientation = Orientation::D45;
    s.line_key = py - px;
  } else if (std::abs(qx - px) == std::abs(qy - py)) {
    s.orientation = Orientation::D135;
    s.line_key = py + px;
  } else {
    return std::nullopt;
  }
  s.lo = std::min(px, qx);
  s.hi = std::max(px, qx);
  return s;
}

std::int64_t sgn(std::int64_t v) { return (v > 0) - (v < 0); }

std::int64_t manhattan(Point a, Point b) {
  return std::abs(std::int64_t{a.x} - b.x) + std::abs(std::int64_t{a.y} - b.y);
}

double octilinear(Point a, Point b) {
  const double dx = std::abs(double(a.x) - double(b.x));
  const double dy = std::abs(double(a.y) - double(b.y));
  return std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy);
}

Net distinct_pins(const Net& net) {
  std::set<Point> seen(net.pins.begin(), net.pins.end());
  return Net{net.name, std::vector<Point>(seen.begin(), seen.end())};
}

}  // namespace

double pairwise_union_length(std::span<const Segment> segments) {
  std::int64_t straight = 0, diagonal = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (s.hi <= s.lo) continue;
    std::vector<Interval> pieces{{s.lo, s.hi}};
    for (std::size_t j = 0; j < i && !pieces.empty(); ++j) {
      if (same_line(s, segments[j])) pieces = subtract(pieces, {segments[j].lo, segments[j].hi});
    }
    std::int64_t fresh = 0;
    for (const Interval& p : pieces) fresh += p.hi - p.lo;
    if (s.orientation == Orientation::D45 || s.orientation == Orientation::D135) {
      diagonal += fresh;
    } else {
      straight += fresh;
    }
  }
  return double(straight) + std::sqrt(2.0) * double(diagonal);
}

std::vector<Segment> reference_expand(Point a, Point b, PsChoice choice) {
  if (std::make_pair(b.x, b.y) < std::make_pair(a.x, a.y)) std::swap(a, b);
  const std::int64_t dx = std::int64_t{b.x} - a.x;  // >= 0
  const std::int64_t dy = std::int64_t{b.y} - a.y;
  const std::int64_t diag = std::min(std::abs(dx), std::abs(dy));

  // Displacement of the diagonal leg and of the axis-parallel leg.
  const std::int64_t diag_x = diag, diag_y = sgn(dy) * diag;
  const std::int64_t axis_x = dx - diag_x, axis_y = dy - diag_y;

  std::int64_t mx = 0, my = 0;
  switch (choice) {
    case PsChoice::C0: mx = a.x + axis_x; my = a.y + axis_y; break;
    case PsChoice::C1: mx = a.x + diag_x; my = a.y + diag_y; break;
    case PsChoice::C2: mx = a.x;          my = b.y;          break;
    case PsChoice::C3: mx = b.x;          my = a.y;          break;
  }
  const Point mid{static_cast<std::int32_t>(mx), static_cast<std::int32_t>(my)};

  std::vector<Segment> out;
  const auto first = classify(a, mid);
  const auto second = classify(mid, b);
  const bool rectilinear_choice = choice == PsChoice::C2 || choice == PsChoice::C3;
  const bool straight =
      dx == 0 || dy == 0 || (!rectilinear_choice && std::abs(dx) == std::abs(dy));
  if (straight) {
    if (auto whole = classify(a, b)) out.push_back(*whole);
    return out;
  }
  if (!first || !second) throw InvariantError("reference expansion produced a bent leg");
  out.push_back(*first);
  out.push_back(*second);
  return out;
}

double reference_tree_length(const Net& net, std::span<const Edge> edges) {
  std::vector<Segment> all;
  for (const Edge& e : edges) {
    const auto segs = reference_expand(net.pins.at(e.u - 1), net.pins.at(e.v - 1), e.choice);
    all.insert(all.end(), segs.begin(), segs.end());
  }
  return pairwise_union_length(all);
}

double mst_length(std::span<const Point> points, Metric metric) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  auto dist = [&](std::size_t i, std::size_t j) {
    return metric == Metric::Manhattan ? double(manhattan(points[i], points[j]))
                                       : octilinear(points[i], points[j]);
  };
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (pick == n || best[i] < best[pick])) pick = i;
    }
    in_tree[pick] = true;
    total += best[pick];
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i]) best[i] = std::min(best[i], dist(pick, i));
    }
  }
  return total;
}

std::vector<Point> hanan_grid(const Net& net) {
  std::set<std::int32_t> xs, ys;
  for (const Point& p : net.pins) {
    xs.insert(p.x);
    ys.insert(p.y);
  }
  std::vector<Point> grid;
  for (auto x : xs)
    for (auto y : ys) grid.push_back({x, y});
  return grid;
}

double exact_rsmt(const Net& input) {
  const Net net = distinct_pins(input);
  const std::size_t n = net.size();
  if (n > kExactRsmtMaxPins) {
    throw InputError("exact RSMT oracle supports at most " +
                     std::to_string(kExactRsmtMaxPins) + " pins, got " + std::to_string(n));
  }
  if (n < 2) return 0.0;

  const std::set<Point> pins(net.pins.begin(), net.pins.end());
  std::vector<Point> candidates;
  for (const Point& p : hanan_grid(net)) {
    if (!pins.count(p)) candidates.push_back(p);
  }

  std::vector<Point> terminals = net.pins;
  double best = mst_length(terminals, Metric::Manhattan);
  const std::size_t max_extra = n - 2;

  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from,
                                                              std::size_t used) {
    if (used == max_extra) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      terminals.push_back(candidates[i]);
      best = std::min(best, mst_length(terminals, Metric::Manhattan));
      extend(i + 1, used + 1);
      terminals.pop_back();
    }
  };
  extend(0, 0);
  return best;
}

std::vector<std::vector<std::pair<PinId, PinId>>> labeled_trees(std::size_t n) {
  std::vector<std::pair<PinId, PinId>> pairs;
  for (PinId u = 1; u <= n; ++u)
    for (PinId v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);

  std::vector<std::vector<std::pair<PinId, PinId>>> trees;
  if (n < 2) return trees;
  std::vector<std::pair<PinId, PinId>> chosen;

  // Acyclic with n-1 edges <=> spanning tree. Check by relabeling
  // components (no union-find).
  auto is_tree = [&](const std::vector<std::pair<PinId, PinId>>& edges) {
    std::vector<std::size_t> label(n + 1);
    for (std::size_t i = 0; i <= n; ++i) label[i] = i;
    for (auto [u, v] : edges) {
      const std::size_t lu = label[u], lv = label[v];
      if (lu == lv) return false;
      for (auto& l : label)
        if (l == lv) l = lu;
    }
    return true;
  };

  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (chosen.size() == n - 1) {
      if (is_tree(chosen)) trees.push_back(chosen);
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      chosen.push_back(pairs[i]);
      choose(i + 1);
      chosen.pop_back();
    }
  };
  choose(0);
  return trees;
}

double best_in_space_xsmt(const Net& input, const ChoiceDomain& domain) {
  const Net net = distinct_pins(input);
  const std::size_t n = net.size();
  if (n > kBestInSpaceMaxPins) {
    throw InputError("search-space oracle supports at most " +
                     std::to_string(kBestInSpaceMaxPins) + " pins, got " + std::to_string(n));
  }
  if (n < 2) return 0.0;

  const auto choices = domain.choices();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& tree : labeled_trees(n)) {
    std::vector<Edge> edges;
    for (auto [u, v] : tree) edges.push_back({u, v, choices[0]});
    // Odometer over choice vectors.
    std::vector<std::size_t> digit(edges.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < edges.size(); ++i) edges[i].choice = choices[digit[i]];
      best = std::min(best, reference_tree_length(net, edges));
      std::size_t pos = 0;
      while (pos < digit.size() && ++digit[pos] == choices.size()) digit[pos++] = 0;
      if (pos == digit.size()) break;
    }
  }
  return best;
}

}  // namespace steiner::oracle
