#include "normsim/simulation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "normsim/mutation.hpp"

namespace normsim {

World init_world(const SimConfig& config, RandomStream& rng) {
    config.validate();

    World world;
    world.resource = config.initial_resource;
    world.agents.reserve(static_cast<std::size_t>(config.initial_agents));
    for (int i = 0; i < config.initial_agents; ++i) {
        Agent a;
        a.id = world.next_agent_id++;
        a.energy = config.initial_energy;
        for (Trait t : kTraits) {
            a.genome.value(t) = rng.uniform(config.trait_init_range.lo, config.trait_init_range.hi);
        }
        for (Trait t : kTraits) {
            if (config.noise_active(t)) {
                a.genome.noise(t) = rng.uniform(config.noise_init_range.lo, config.noise_init_range.hi);
            }
        }
        world.agents.push_back(a);
    }
    return world;
}

double draw_effective_behavior(const Genome& genome, Trait trait, bool noise_enabled, RandomStream& rng) {
    const double value = genome.value(trait);
    const double sd = genome.noise(trait);
    if (!noise_enabled || sd == 0.0) {
        return value;
    }
    return std::clamp(rng.gaussian(value, sd), 0.0, 1.0);
}

double eat_turn(Agent& agent, World& world, double effective_bite) {
    if (world.resource <= 0.0) {
        ++world.accounting.starved_eats;
    }
    const double consumed = std::min(effective_bite, world.resource);
    agent.energy += consumed;
    world.resource -= consumed;
    agent.consumed_this_round = consumed;
    world.accounting.consumed += consumed;
    return consumed;
}

void sanction_turn(World& world, std::size_t actor, std::span<const std::size_t> window,
                   const SimConfig& config, RandomStream& rng) {
    const bool threshold_noisy = config.noise_active(Trait::Threshold);
    const bool strength_noisy = config.noise_active(Trait::Strength);
    for (std::size_t target : window) {
        const Genome& genome = world.agents[actor].genome;
        const double threshold = draw_effective_behavior(genome, Trait::Threshold, threshold_noisy, rng);
        if (!(world.agents[target].consumed_this_round > threshold)) {
            continue;
        }
        const double strength = draw_effective_behavior(genome, Trait::Strength, strength_noisy, rng);
        const double cost = config.sanction_cost_factor * strength;
        world.agents[target].energy -= strength;
        world.agents[actor].energy -= cost;
        world.accounting.sanction_damage += strength;
        world.accounting.sanction_cost += cost;
        ++world.accounting.sanctions;
    }
}

RoundMetrics step_round(World& world, const SimConfig& config, RandomStream& rng) {
    if (world.round >= config.max_rounds) {
        throw std::logic_error("step_round: round budget exhausted");
    }
    world.accounting = RoundAccounting{};
    for (auto& a : world.agents) a.consumed_this_round = 0.0;

    // Turn order.
    std::vector<std::size_t> order(world.agents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));

    const bool bite_noisy = config.noise_active(Trait::Bite);
    const auto window_cap = static_cast<std::size_t>(config.observation_window);
    std::vector<std::size_t> window;
    window.reserve(window_cap);
    for (std::size_t k = 0; k < order.size(); ++k) {
        Agent& agent = world.agents[order[k]];
        eat_turn(agent, world, draw_effective_behavior(agent.genome, Trait::Bite, bite_noisy, rng));

        window.clear();
        for (std::size_t back = 1; back <= window_cap && back <= k; ++back) {
            window.push_back(order[k - back]);
        }
        sanction_turn(world, order[k], window, config, rng);
    }

    // Metabolism.
    for (auto& a : world.agents) {
        a.energy -= config.metabolism_per_round;
        world.accounting.metabolism_paid += config.metabolism_per_round;
    }

    // Death.
    std::erase_if(world.agents, [&](const Agent& a) {
        if (a.energy < config.death_threshold) {
            world.accounting.removed_energy += a.energy;
            ++world.accounting.deaths;
            return true;
        }
        return false;
    });

    // Reproduction: one split per surviving parent; children sit out until next round.
    const auto params = MutationParams::from_config(config);
    const std::size_t parents = world.agents.size();
    for (std::size_t i = 0; i < parents; ++i) {
        if (!(world.agents[i].energy > config.reproduction_threshold)) {
            continue;
        }
        const double half = world.agents[i].energy / 2.0;
        world.agents[i].energy = half;
        Agent child;
        child.id = world.next_agent_id++;
        child.genome = mutate_genome(world.agents[i].genome, params, rng);
        child.energy = half;
        world.agents.push_back(child);
        ++world.accounting.births;
    }

    world.resource += config.regrowth_per_round;
    ++world.round;
    return snapshot(world);
}

RunResult run_simulation(const SimConfig& config) {
    RandomStream rng(config.seed);
    World world = init_world(config, rng);

    RunResult result;
    result.config = config;
    result.rounds.reserve(static_cast<std::size_t>(config.max_rounds) + 1);
    result.rounds.push_back(snapshot(world));
    while (world.round < config.max_rounds) {
        result.rounds.push_back(step_round(world, config, rng));
        if (world.extinct()) {
            result.termination = Termination::Extinction;
            result.extinction_round = world.round;
            break;
        }
    }
    return result;
}

}  // namespace normsim
