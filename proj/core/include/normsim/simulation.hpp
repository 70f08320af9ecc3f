// One simulation round: every agent, in a freshly shuffled order, eats and
// then sanctions the agents that went just before it. Afterwards everybody
// pays metabolism, agents below the death threshold are removed, the rich
// split in two, and the resource regrows.
#pragma once

#include <span>

#include "normsim/config.hpp"
#include "normsim/metrics.hpp"
#include "normsim/random.hpp"
#include "normsim/world.hpp"

namespace normsim {

/// Fresh world: uniformly drawn traits, noise genes drawn only where noise
/// is active (zero otherwise), equal energies. Validates `config`.
World init_world(const SimConfig& config, RandomStream& rng);

/// Per-use value of a trait: the gene itself when noise is off or zero,
/// otherwise a Normal(value, noise) draw clamped to [0, 1].
double draw_effective_behavior(const Genome& genome, Trait trait, bool noise_enabled, RandomStream& rng);

/// Agent takes min(bite, resource) from the shared pool. Returns the amount consumed.
double eat_turn(Agent& agent, World& world, double effective_bite);

/// `actor` checks each agent in `window` (most recent first) against a freshly
/// drawn threshold and sanctions those who consumed strictly more.
void sanction_turn(World& world, std::size_t actor, std::span<const std::size_t> window,
                   const SimConfig& config, RandomStream& rng);

/// Executes one full round and returns the post-round snapshot.
/// Throws std::logic_error if the round budget is already exhausted.
RoundMetrics step_round(World& world, const SimConfig& config, RandomStream& rng);

/// Complete run from `config.seed`. Stops early on extinction.
RunResult run_simulation(const SimConfig& config);

}  // namespace normsim
