#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace steiner {

/// A pin or bend location on the integer routing grid.
struct Point {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Which two-leg shortest path realizes a pin-to-pin edge.
///
/// C0 routes the rectilinear leg first and the diagonal leg second, C1 the
/// reverse. C2 goes vertical then horizontal, C3 horizontal then vertical.
/// The legs are always laid out starting from the endpoint with the smaller
/// x coordinate (ties broken by y).
enum class PsChoice : std::uint8_t { C0 = 0, C1 = 1, C2 = 2, C3 = 3 };

enum class Orientation : std::uint8_t { H = 0, V = 1, D45 = 2, D135 = 3 };

/// A routed piece lying on one grid line.
///
/// `line_key` identifies the line: y for H, x for V, y - x for D45 and
/// y + x for D135. `[lo, hi]` is the projection on the y axis for V and on
/// the x axis for every other orientation.
struct Segment {
  Orientation orientation = Orientation::H;
  std::int64_t line_key = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  friend constexpr bool operator==(const Segment&, const Segment&) = default;
  friend constexpr auto operator<=>(const Segment&, const Segment&) = default;
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

constexpr bool is_diagonal(Orientation o) noexcept {
  return o == Orientation::D45 || o == Orientation::D135;
}

/// Euclidean length of a single segment.
double segment_length(const Segment& s) noexcept;

/// Builds the segment joining two points that share an H, V or diagonal line.
/// Returns false when the points are equal or not on a common line.
bool make_segment(Point from, Point to, Segment& out) noexcept;

/// Shortest octilinear distance: max(|dx|,|dy|) + (sqrt2 - 1) min(|dx|,|dy|).
double octilinear_distance(Point a, Point b) noexcept;

std::int64_t manhattan_distance(Point a, Point b) noexcept;

/// The pseudo-Steiner point `choice` puts on edge a-b; empty when the edge is
/// a single straight segment.
std::optional<Point> bend_point(Point a, Point b, PsChoice choice) noexcept;

/// Expands edge a-b under `choice` into 0, 1 or 2 non-degenerate segments.
std::vector<Segment> expand_edge(Point a, Point b, PsChoice choice);

/// Appends the expansion of a-b to `out`.
void append_edge_segments(Point a, Point b, PsChoice choice,
                          std::vector<Segment>& out);

/// Total length of the union of all segments. Overlapping pieces on the
/// same line are counted once.
double union_length(std::span<const Segment> segments);

/// Like `union_length` but sorts `segments` in place instead of copying.
double union_length_inplace(std::vector<Segment>& segments);

/// Split union measure into rectilinear and diagonal grid units. The diagonal
/// part is measured along the x axis and must be multiplied by sqrt2.
struct UnionMeasure {
  std::int64_t rectilinear = 0;
  std::int64_t diagonal = 0;

  double length() const noexcept {
    return static_cast<double>(rectilinear) +
           kSqrt2 * static_cast<double>(diagonal);
  }
};

UnionMeasure union_measure_inplace(std::vector<Segment>& segments);

}  // namespace steiner
