#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "steiner/rng.hpp"
#include "steiner/tree_encoding.hpp"

namespace steiner {

/// PS transformation touches only choice digits; E transformation may also
/// replace edges.
enum class TransformMode : std::uint8_t { PS, E };

std::string to_string(TransformMode mode);
TransformMode parse_transform_mode(std::string_view text);

/// Where an edge present in both crossover parents takes its choice from.
enum class CommonEdgeChoice : std::uint8_t { FromParticle, FromGuide };

struct OperatorOptions {
  /// Number of sequential single-edge mutations per mutate call.
  std::size_t mutation_points = 2;
  CommonEdgeChoice common_edge_choice = CommonEdgeChoice::FromParticle;
  /// PS crossover: chance that a shared edge adopts the guide's choice.
  double ps_adopt_probability = 0.5;
};

/// k-point mutation. E mode drops a random edge and reconnects the two
/// components with a random cross edge; PS mode resamples a random edge's
/// choice. The result is left unevaluated.
Particle mutate(const Particle& p, TransformMode mode, std::size_t k,
                const Net& net, const ChoiceDomain& domain, Rng& rng);

/// Crossover of `p` toward `guide`. E mode keeps the shared edges and fills
/// the tree from the symmetric difference in random order, skipping edges
/// that would close a cycle. PS mode keeps p's topology and copies choices
/// of shared edges from the guide.
Particle crossover(const Particle& p, const Particle& guide, TransformMode mode,
                   const Net& net, const ChoiceDomain& domain, Rng& rng,
                   const OperatorOptions& options = {});

struct VelocityWeights {
  double w = 0.0;   // mutation probability
  double c1 = 0.0;  // crossover probability with pbest
  double c2 = 0.0;  // crossover probability with gbest
};

/// One discrete PSO move: mutate with probability w, then cross with pbest
/// with probability c1, then with gbest with probability c2. Always draws
/// exactly three gate numbers from `rng` before any operator runs.
Particle apply_velocity(const Particle& p, const Particle& pbest,
                        const Particle& gbest, const VelocityWeights& weights,
                        TransformMode mode, const Net& net,
                        const ChoiceDomain& domain, Rng& rng,
                        const OperatorOptions& options = {});

}  // namespace steiner
