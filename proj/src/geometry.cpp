#include "steiner/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace steiner {

double segment_length(const Segment& s) noexcept {
  const auto span = static_cast<double>(s.hi - s.lo);
  return is_diagonal(s.orientation) ? span * kSqrt2 : span;
}

bool make_segment(Point from, Point to, Segment& out) noexcept {
  const std::int64_t x0 = from.x, y0 = from.y, x1 = to.x, y1 = to.y;
  const std::int64_t dx = x1 - x0, dy = y1 - y0;
  if (dx == 0 && dy == 0) return false;
  if (dy == 0) {
    out = {Orientation::H, y0, std::min(x0, x1), std::max(x0, x1)};
  } else if (dx == 0) {
    out = {Orientation::V, x0, std::min(y0, y1), std::max(y0, y1)};
  } else if (dx == dy) {
    out = {Orientation::D45, y0 - x0, std::min(x0, x1), std::max(x0, x1)};
  } else if (dx == -dy) {
    out = {Orientation::D135, y0 + x0, std::min(x0, x1), std::max(x0, x1)};
  } else {
    return false;
  }
  return true;
}

double octilinear_distance(Point a, Point b) noexcept {
  const std::int64_t dx = std::llabs(std::int64_t{a.x} - b.x);
  const std::int64_t dy = std::llabs(std::int64_t{a.y} - b.y);
  const auto lo = std::min(dx, dy), hi = std::max(dx, dy);
  return static_cast<double>(hi - lo) + kSqrt2 * static_cast<double>(lo);
}

std::int64_t manhattan_distance(Point a, Point b) noexcept {
  return std::llabs(std::int64_t{a.x} - b.x) +
         std::llabs(std::int64_t{a.y} - b.y);
}

std::optional<Point> bend_point(Point a, Point b, PsChoice choice) noexcept {
  if (b < a) std::swap(a, b);
  const std::int64_t dx = std::int64_t{b.x} - a.x;
  const std::int64_t dy = std::int64_t{b.y} - a.y;
  const std::int64_t ady = dy < 0 ? -dy : dy;
  const std::int64_t s = dy < 0 ? -1 : 1;
  if (dx == 0 || dy == 0) return std::nullopt;
  // A 45-degree pair is one diagonal segment for the octilinear choices; the
  // rectilinear choices still bend so rectilinear trees stay rectilinear.
  const bool octilinear = choice == PsChoice::C0 || choice == PsChoice::C1;
  if (octilinear && dx == ady) return std::nullopt;

  std::int64_t x = 0, y = 0;
  switch (choice) {
    case PsChoice::C2:
      x = a.x, y = b.y;
      break;
    case PsChoice::C3:
      x = b.x, y = a.y;
      break;
    case PsChoice::C0:
      if (ady <= dx)
        x = b.x - ady, y = a.y;
      else
        x = a.x, y = b.y - s * dx;
      break;
    case PsChoice::C1:
      if (ady <= dx)
        x = a.x + ady, y = b.y;
      else
        x = b.x, y = a.y + s * dx;
      break;
  }
  return Point{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
}

void append_edge_segments(Point a, Point b, PsChoice choice,
                          std::vector<Segment>& out) {
  if (b < a) std::swap(a, b);
  Segment seg;
  if (const auto bend = bend_point(a, b, choice)) {
    [[maybe_unused]] bool ok = make_segment(a, *bend, seg);
    assert(ok);
    out.push_back(seg);
    ok = make_segment(*bend, b, seg);
    assert(ok);
    out.push_back(seg);
  } else if (make_segment(a, b, seg)) {
    out.push_back(seg);
  }
}

std::vector<Segment> expand_edge(Point a, Point b, PsChoice choice) {
  std::vector<Segment> out;
  out.reserve(2);
  append_edge_segments(a, b, choice, out);
  return out;
}

UnionMeasure union_measure_inplace(std::vector<Segment>& segments) {
  std::sort(segments.begin(), segments.end());
  UnionMeasure total;
  std::size_t i = 0;
  while (i < segments.size()) {
    const Orientation o = segments[i].orientation;
    const std::int64_t key = segments[i].line_key;
    std::int64_t covered = 0;
    std::int64_t run_lo = segments[i].lo, run_hi = segments[i].hi;
    for (++i; i < segments.size() && segments[i].orientation == o &&
              segments[i].line_key == key;
         ++i) {
      const Segment& s = segments[i];
      if (s.lo > run_hi) {
        covered += run_hi - run_lo;
        run_lo = s.lo;
        run_hi = s.hi;
      } else {
        run_hi = std::max(run_hi, s.hi);
      }
    }
    covered += run_hi - run_lo;
    (is_diagonal(o) ? total.diagonal : total.rectilinear) += covered;
  }
  return total;
}

double union_length_inplace(std::vector<Segment>& segments) {
  return union_measure_inplace(segments).length();
}

double union_length(std::span<const Segment> segments) {
  std::vector<Segment> copy(segments.begin(), segments.end());
  return union_length_inplace(copy);
}

}  // namespace steiner
