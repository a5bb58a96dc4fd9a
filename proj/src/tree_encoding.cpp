#include "steiner/tree_encoding.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <tuple>

#include "steiner/errors.hpp"

namespace steiner {

Net Net::normalized() const {
  Net out{name, pins};
  std::sort(out.pins.begin(), out.pins.end());
  out.pins.erase(std::unique(out.pins.begin(), out.pins.end()), out.pins.end());
  return out;
}

// ---------------------------------------------------------------------------
// ChoiceDomain

ChoiceDomain::ChoiceDomain(RoutingMode mode) {
  if (mode == RoutingMode::Rectilinear) {
    *this = ChoiceDomain{PsChoice::C2, PsChoice::C3};
  } else {
    *this = ChoiceDomain{PsChoice::C0, PsChoice::C1, PsChoice::C2, PsChoice::C3};
  }
}

ChoiceDomain::ChoiceDomain(std::initializer_list<PsChoice> choices) {
  for (PsChoice c : choices) {
    if (contains(c)) continue;
    choices_[count_++] = c;
  }
  if (count_ == 0) throw InputError("choice domain must not be empty");
  std::sort(choices_.begin(), choices_.begin() + count_);
}

bool ChoiceDomain::contains(PsChoice c) const noexcept {
  return std::find(choices_.begin(), choices_.begin() + count_, c) !=
         choices_.begin() + count_;
}

PsChoice ChoiceDomain::sample(Rng& rng) const {
  if (count_ == 1) return choices_[0];
  return choices_[uniform_int<std::size_t>(rng, 0, count_ - 1)];
}

bool ChoiceDomain::octilinear() const noexcept {
  return contains(PsChoice::C0) || contains(PsChoice::C1);
}

unsigned ChoiceDomain::mask() const noexcept {
  unsigned m = 0;
  for (std::size_t i = 0; i < count_; ++i) m |= 1u << static_cast<unsigned>(choices_[i]);
  return m;
}

std::string ChoiceDomain::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < count_; ++i) {
    out.push_back(static_cast<char>('0' + static_cast<int>(choices_[i])));
  }
  return out;
}

ChoiceDomain ChoiceDomain::parse(std::string_view text) {
  ChoiceDomain d{PsChoice::C0};
  d.count_ = 0;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch < '0' || ch > '3') {
      throw InputError("invalid PS choice '" + std::string(1, ch) +
                       "' (expected digits 0-3)");
    }
    const auto c = static_cast<PsChoice>(ch - '0');
    if (!d.contains(c)) d.choices_[d.count_++] = c;
  }
  if (d.count_ == 0) throw InputError("choice domain must not be empty");
  std::sort(d.choices_.begin(), d.choices_.begin() + d.count_);
  return d;
}

std::string to_string(RoutingMode mode) {
  return mode == RoutingMode::Rectilinear ? "rect" : "x";
}

RoutingMode parse_routing_mode(std::string_view text) {
  if (text == "rect" || text == "rectilinear" || text == "rsmt") {
    return RoutingMode::Rectilinear;
  }
  if (text == "x" || text == "xarch" || text == "xsmt") return RoutingMode::XArch;
  throw InputError("unknown routing mode '" + std::string(text) +
                   "' (expected rect or x)");
}

// ---------------------------------------------------------------------------
// Particle

double fitness_of(double length) noexcept { return 1.0 / (length + 1.0); }

double Particle::length() const {
  if (!length_) throw InvariantError("particle length requested before evaluation");
  return *length_;
}

double Particle::fitness() const { return fitness_of(length()); }

double Particle::evaluate(const Net& net) {
  if (!length_) length_ = tree_length(net, *this);
  return *length_;
}

std::vector<std::uint64_t> Particle::topology() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const Edge& e : edges_) keys.push_back(e.key());
  std::sort(keys.begin(), keys.end());
  return keys;
}

// ---------------------------------------------------------------------------
// UnionFind

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) noexcept {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --components_;
  return true;
}

// ---------------------------------------------------------------------------
// Validation and length

bool validate(const Net& net, const Particle& p) noexcept {
  const std::size_t n = net.size();
  if (n < 2 || p.size() != n - 1) return false;
  UnionFind uf(n);
  for (const Edge& e : p.edges()) {
    if (e.u < 1 || e.v < 1 || e.u > n || e.v > n || e.u == e.v) return false;
    if (static_cast<unsigned>(e.choice) > 3) return false;
    if (!uf.unite(e.u - 1, e.v - 1)) return false;
  }
  return uf.components() == 1;
}

std::vector<Segment> tree_segments(const Net& net, const Particle& p) {
  if (!validate(net, p)) {
    throw InvariantError("particle is not a spanning tree of net '" + net.name + "'");
  }
  std::vector<Segment> segments;
  segments.reserve(2 * p.size());
  for (const Edge& e : p.edges()) {
    append_edge_segments(net.pin(e.u), net.pin(e.v), e.choice, segments);
  }
  return segments;
}

double tree_length(const Net& net, const Particle& p) {
  auto segments = tree_segments(net, p);
  return union_length_inplace(segments);
}

// ---------------------------------------------------------------------------
// Constructors

Particle random_spanning_tree(const Net& net, const ChoiceDomain& domain,
                              Rng& rng) {
  const std::size_t n = net.size();
  if (n < 2) throw InputError("net '" + net.name + "' needs at least 2 pins");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  UnionFind uf(n);
  while (edges.size() + 1 < n) {
    const auto u = uniform_int<PinId>(rng, 1, static_cast<PinId>(n));
    const auto v = uniform_int<PinId>(rng, 1, static_cast<PinId>(n));
    if (u == v || !uf.unite(u - 1, v - 1)) continue;
    edges.push_back(Edge{u, v, domain.sample(rng)}.canonical());
  }
  return Particle(std::move(edges));
}

Particle mst_spanning_tree(const Net& net, const ChoiceDomain& domain) {
  const std::size_t n = net.size();
  if (n < 2) throw InputError("net '" + net.name + "' needs at least 2 pins");
  const bool octilinear = domain.octilinear();

  struct Candidate {
    double dist;
    PinId u, v;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(n * (n - 1) / 2);
  for (PinId u = 1; u <= n; ++u) {
    for (PinId v = u + 1; v <= n; ++v) {
      const Point a = net.pin(u), b = net.pin(v);
      const double d = octilinear ? octilinear_distance(a, b)
                                  : static_cast<double>(manhattan_distance(a, b));
      candidates.push_back({d, u, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.dist, a.u, a.v) < std::tie(b.dist, b.u, b.v);
            });

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  UnionFind uf(n);
  for (const Candidate& c : candidates) {
    if (uf.unite(c.u - 1, c.v - 1)) {
      edges.push_back({c.u, c.v, domain.front()});
      if (edges.size() + 1 == n) break;
    }
  }
  return Particle(std::move(edges));
}

// ---------------------------------------------------------------------------
// Text encoding

std::string serialize(const Particle& p, double fitness) {
  std::string out;
  char buf[64];
  for (const Edge& e : p.edges()) {
    std::snprintf(buf, sizeof buf, "%u %u %u ", e.u, e.v,
                  static_cast<unsigned>(e.choice));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%.4f", fitness);
  out += buf;
  return out;
}

std::string serialize(const Particle& p) { return serialize(p, p.fitness()); }

ParsedParticle parse_particle(std::string_view text,
                              std::optional<std::size_t> pin_count) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }

  if (tokens.size() < 4 || (tokens.size() - 1) % 3 != 0) {
    throw InputError("particle string has " + std::to_string(tokens.size()) +
                     " tokens; expected 3(n-1)+1 with n >= 2");
  }
  const std::size_t n = (tokens.size() - 1) / 3 + 1;
  if (pin_count && *pin_count != n) {
    throw InputError("particle string has " + std::to_string(tokens.size()) +
                     " tokens; a " + std::to_string(*pin_count) + "-pin net needs " +
                     std::to_string(3 * (*pin_count - 1) + 1));
  }

  auto parse_uint = [](std::string_view tok, const char* what) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw InputError(std::string("invalid ") + what + " '" + std::string(tok) + "'");
    }
    return value;
  };

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < tokens.size(); k += 3) {
    const unsigned u = parse_uint(tokens[k], "pin index");
    const unsigned v = parse_uint(tokens[k + 1], "pin index");
    const unsigned c = parse_uint(tokens[k + 2], "PS choice");
    if (u < 1 || u > n || v < 1 || v > n) {
      throw InputError("pin index out of range 1.." + std::to_string(n) + " in edge " +
                       std::to_string(k / 3 + 1));
    }
    if (c > 3) {
      throw InputError("PS choice " + std::to_string(c) + " out of range 0..3 in edge " +
                       std::to_string(k / 3 + 1));
    }
    edges.push_back({u, v, static_cast<PsChoice>(c)});
  }

  const std::string fit_tok(tokens.back());
  double fitness = 0.0;
  try {
    std::size_t used = 0;
    fitness = std::stod(fit_tok, &used);
    if (used != fit_tok.size() || !std::isfinite(fitness)) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InputError("invalid fitness '" + fit_tok + "'");
  }
  return {Particle(std::move(edges)), fitness};
}

}  // namespace steiner
