#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steiner/geometry.hpp"
#include "steiner/rng.hpp"

namespace steiner {

/// 1-based pin index, matching the textual particle encoding.
using PinId = std::uint32_t;

struct Net {
  std::string name;
  std::vector<Point> pins;

  std::size_t size() const noexcept { return pins.size(); }
  Point pin(PinId id) const { return pins.at(id - 1); }

  /// Copy with pins sorted by (x, y) and duplicates removed.
  Net normalized() const;

  friend bool operator==(const Net&, const Net&) = default;
};

enum class RoutingMode : std::uint8_t { Rectilinear, XArch };

/// The set of PS choices a particle may use.
class ChoiceDomain {
 public:
  /// {C2, C3} for rectilinear routing, all four choices for X-architecture.
  explicit ChoiceDomain(RoutingMode mode);
  ChoiceDomain(std::initializer_list<PsChoice> choices);

  std::span<const PsChoice> choices() const noexcept {
    return {choices_.data(), count_};
  }
  bool contains(PsChoice c) const noexcept;
  PsChoice front() const noexcept { return choices_[0]; }
  PsChoice sample(Rng& rng) const;

  /// True if any diagonal-first or rectilinear-first octilinear choice is
  /// allowed, i.e. the tree is measured in the octilinear metric.
  bool octilinear() const noexcept;

  std::string to_string() const;
  static ChoiceDomain parse(std::string_view text);

  friend bool operator==(const ChoiceDomain& a, const ChoiceDomain& b) {
    return a.mask() == b.mask();
  }

 private:
  unsigned mask() const noexcept;

  std::array<PsChoice, 4> choices_{};
  std::size_t count_ = 0;
};

struct Edge {
  PinId u = 0;
  PinId v = 0;
  PsChoice choice = PsChoice::C0;

  /// Same edge with u < v.
  Edge canonical() const noexcept {
    return u <= v ? *this : Edge{v, u, choice};
  }
  /// Endpoint pair ignoring orientation and choice.
  std::uint64_t key() const noexcept {
    const auto c = canonical();
    return (std::uint64_t{c.u} << 32) | c.v;
  }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A candidate routing tree: n-1 pin-to-pin edges, each with a PS choice.
///
/// Length is cached after `evaluate` and dropped by every mutating call.
class Particle {
 public:
  Particle() = default;
  explicit Particle(std::vector<Edge> edges) : edges_(std::move(edges)) {}

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  void set_edges(std::vector<Edge> edges) {
    edges_ = std::move(edges);
    length_.reset();
  }
  void set_edge(std::size_t i, Edge e) {
    edges_.at(i) = e;
    length_.reset();
  }
  void set_choice(std::size_t i, PsChoice c) {
    edges_.at(i).choice = c;
    length_.reset();
  }

  bool evaluated() const noexcept { return length_.has_value(); }
  /// Cached tree length; throws InvariantError if not evaluated.
  double length() const;
  /// Fitness 1 / (length + 1) of the cached length.
  double fitness() const;
  /// Computes (if needed) and caches the tree length on `net`.
  double evaluate(const Net& net);

  /// Sorted canonical endpoint keys; the topology without choices.
  std::vector<std::uint64_t> topology() const;

  /// Same edges and choices; cache state is ignored.
  friend bool operator==(const Particle& a, const Particle& b) {
    return a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::optional<double> length_;
};

/// Disjoint-set forest with union by rank and path halving. 0-based.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x) noexcept;
  /// Merges the sets of a and b; false if they were already joined.
  bool unite(std::size_t a, std::size_t b) noexcept;
  std::size_t components() const noexcept { return components_; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t components_;
};

double fitness_of(double length) noexcept;

/// True iff `p` has n-1 edges with in-range distinct endpoints forming a
/// spanning tree of the net.
bool validate(const Net& net, const Particle& p) noexcept;

/// Routed length of `p` with overlaps counted once. Throws InvariantError
/// if `p` is not a spanning tree of `net`.
double tree_length(const Net& net, const Particle& p);

/// All routed segments of `p`, in edge order.
std::vector<Segment> tree_segments(const Net& net, const Particle& p);

Particle random_spanning_tree(const Net& net, const ChoiceDomain& domain,
                              Rng& rng);
inline Particle random_spanning_tree(const Net& net, RoutingMode mode,
                                     Rng& rng) {
  return random_spanning_tree(net, ChoiceDomain(mode), rng);
}

/// Kruskal MST under the Manhattan metric (rectilinear domains) or the
/// octilinear metric. Ties go to the lexicographically smaller (u, v).
/// Every edge gets `domain.front()` as its choice.
Particle mst_spanning_tree(const Net& net, const ChoiceDomain& domain);
inline Particle mst_spanning_tree(const Net& net, RoutingMode mode) {
  return mst_spanning_tree(net, ChoiceDomain(mode));
}

/// Flat numeric particle string "u v c u v c ... fitness".
std::string serialize(const Particle& p, double fitness);
/// Serializes with the fitness of the cached length.
std::string serialize(const Particle& p);

struct ParsedParticle {
  Particle particle;
  double fitness = 0.0;
};

/// Parses a particle string. When `pin_count` is given the token count must
/// be 3(pin_count-1)+1; otherwise the pin count is inferred from it.
ParsedParticle parse_particle(std::string_view text,
                              std::optional<std::size_t> pin_count = {});

std::string to_string(RoutingMode mode);
RoutingMode parse_routing_mode(std::string_view text);

}  // namespace steiner
