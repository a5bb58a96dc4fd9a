#include "steiner/operators.hpp"

#include <algorithm>
#include <utility>

#include "steiner/errors.hpp"

namespace steiner {

std::string to_string(TransformMode mode) {
  return mode == TransformMode::PS ? "PS" : "E";
}

TransformMode parse_transform_mode(std::string_view text) {
  if (text == "PS" || text == "ps") return TransformMode::PS;
  if (text == "E" || text == "e") return TransformMode::E;
  throw InputError("unknown transformation '" + std::string(text) +
                   "' (expected PS or E)");
}

namespace {

void mutate_edge_once(Particle& p, const Net& net, const ChoiceDomain& domain,
                      Rng& rng) {
  const std::size_t n = net.size();
  const std::size_t removed = uniform_int<std::size_t>(rng, 0, p.size() - 1);

  UnionFind uf(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != removed) uf.unite(p.edge(i).u - 1, p.edge(i).v - 1);
  }
  // Exactly two components remain, so a crossing pair is always found.
  for (;;) {
    const auto a = uniform_int<PinId>(rng, 1, static_cast<PinId>(n));
    const auto b = uniform_int<PinId>(rng, 1, static_cast<PinId>(n));
    if (uf.find(a - 1) != uf.find(b - 1)) {
      p.set_edge(removed, Edge{a, b, domain.sample(rng)}.canonical());
      return;
    }
  }
}

void mutate_choice_once(Particle& p, const ChoiceDomain& domain, Rng& rng) {
  const std::size_t i = uniform_int<std::size_t>(rng, 0, p.size() - 1);
  p.set_choice(i, domain.sample(rng));
}

struct KeyedEdge {
  std::uint64_t key;
  Edge edge;
};

std::vector<KeyedEdge> sorted_canonical(const Particle& p) {
  std::vector<KeyedEdge> out;
  out.reserve(p.size());
  for (const Edge& e : p.edges()) out.push_back({e.key(), e.canonical()});
  std::sort(out.begin(), out.end(),
            [](const KeyedEdge& a, const KeyedEdge& b) { return a.key < b.key; });
  return out;
}

Particle crossover_edges(const Particle& p, const Particle& guide, const Net& net,
                         Rng& rng, const OperatorOptions& options) {
  const auto pe = sorted_canonical(p);
  const auto ge = sorted_canonical(guide);

  std::vector<Edge> shared;
  std::vector<Edge> differing;
  std::size_t i = 0, j = 0;
  while (i < pe.size() || j < ge.size()) {
    if (j == ge.size() || (i < pe.size() && pe[i].key < ge[j].key)) {
      differing.push_back(pe[i++].edge);
    } else if (i == pe.size() || ge[j].key < pe[i].key) {
      differing.push_back(ge[j++].edge);
    } else {
      shared.push_back(options.common_edge_choice == CommonEdgeChoice::FromGuide
                           ? ge[j].edge
                           : pe[i].edge);
      ++i;
      ++j;
    }
  }

  const std::size_t n = net.size();
  UnionFind uf(n);
  std::vector<Edge> child;
  child.reserve(n - 1);
  for (const Edge& e : shared) {
    uf.unite(e.u - 1, e.v - 1);
    child.push_back(e);
  }
  // Random draws with replacement visit the distinct edges in a uniformly
  // random first-visit order, and a rejected edge stays rejected; a shuffle
  // is the same process without the wasted draws.
  std::shuffle(differing.begin(), differing.end(), rng);
  for (const Edge& e : differing) {
    if (child.size() + 1 == n) break;
    if (uf.unite(e.u - 1, e.v - 1)) child.push_back(e);
  }
  if (child.size() + 1 != n) {
    throw InvariantError("crossover parents do not span the net");
  }
  return Particle(std::move(child));
}

Particle crossover_choices(const Particle& p, const Particle& guide, Rng& rng,
                           const OperatorOptions& options) {
  const auto ge = sorted_canonical(guide);
  Particle child = p;
  for (std::size_t i = 0; i < child.size(); ++i) {
    const std::uint64_t key = child.edge(i).key();
    const auto it = std::lower_bound(
        ge.begin(), ge.end(), key,
        [](const KeyedEdge& e, std::uint64_t k) { return e.key < k; });
    if (it == ge.end() || it->key != key) continue;
    if (uniform01(rng) < options.ps_adopt_probability &&
        child.edge(i).choice != it->edge.choice) {
      child.set_choice(i, it->edge.choice);
    }
  }
  return child;
}

}  // namespace

Particle mutate(const Particle& p, TransformMode mode, std::size_t k,
                const Net& net, const ChoiceDomain& domain, Rng& rng) {
  Particle out = p;
  if (out.size() == 0) return out;
  for (std::size_t step = 0; step < k; ++step) {
    if (mode == TransformMode::E) {
      mutate_edge_once(out, net, domain, rng);
    } else {
      mutate_choice_once(out, domain, rng);
    }
  }
  return out;
}

Particle crossover(const Particle& p, const Particle& guide, TransformMode mode,
                   const Net& net, const ChoiceDomain& /*domain*/, Rng& rng,
                   const OperatorOptions& options) {
  if (mode == TransformMode::E) return crossover_edges(p, guide, net, rng, options);
  return crossover_choices(p, guide, rng, options);
}

Particle apply_velocity(const Particle& p, const Particle& pbest,
                        const Particle& gbest, const VelocityWeights& weights,
                        TransformMode mode, const Net& net,
                        const ChoiceDomain& domain, Rng& rng,
                        const OperatorOptions& options) {
  const double r1 = uniform01(rng);
  const double r2 = uniform01(rng);
  const double r3 = uniform01(rng);

  Particle x = p;
  if (r1 < weights.w) x = mutate(x, mode, options.mutation_points, net, domain, rng);
  if (r2 < weights.c1) x = crossover(x, pbest, mode, net, domain, rng, options);
  if (r3 < weights.c2) x = crossover(x, gbest, mode, net, domain, rng, options);
  return x;
}

}  // namespace steiner
