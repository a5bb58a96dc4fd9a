#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steiner/geometry.hpp"
#include "steiner/tree_encoding.hpp"

// Brute-force reference answers. Nothing here calls into the geometry or
// tree-encoding algorithms; only the plain data types are shared.
namespace steiner::oracle {

/// Union length by subtracting every earlier same-line interval from each
/// segment. O(k^2), written for clarity rather than speed.
double pairwise_union_length(std::span<const Segment> segments);

/// Routed segments of edge a-b under `choice`, built from displacement
/// vectors instead of bend-point formulas.
std::vector<Segment> reference_expand(Point a, Point b, PsChoice choice);

/// Length of a tree given as raw edges, via reference_expand and
/// pairwise_union_length. Does not check that the edges form a tree.
double reference_tree_length(const Net& net, std::span<const Edge> edges);

enum class Metric { Manhattan, Octilinear };

/// Prim's algorithm over the complete graph on `points`.
double mst_length(std::span<const Point> points, Metric metric);

/// Distinct-x by distinct-y grid points of the net.
std::vector<Point> hanan_grid(const Net& net);

inline constexpr std::size_t kExactRsmtMaxPins = 6;
inline constexpr std::size_t kBestInSpaceMaxPins = 5;

/// Exact rectilinear Steiner minimal tree length: the minimum Manhattan MST
/// over the pins plus every subset of at most n-2 Hanan grid points.
/// Throws InputError for nets with more than 6 distinct pins.
double exact_rsmt(const Net& net);

/// Shortest tree over every labeled spanning tree of the pins and every
/// assignment of choices from `domain` to its edges. Throws InputError for
/// nets with more than 5 distinct pins.
double best_in_space_xsmt(const Net& net, const ChoiceDomain& domain);
inline double best_in_space_xsmt(const Net& net, RoutingMode mode) {
  return best_in_space_xsmt(net, ChoiceDomain(mode));
}

/// Every labeled spanning tree on pins 1..n as edge lists (n^(n-2) of them),
/// found by filtering all (n-1)-edge subsets for acyclicity.
std::vector<std::vector<std::pair<PinId, PinId>>> labeled_trees(std::size_t n);

}  // namespace steiner::oracle
