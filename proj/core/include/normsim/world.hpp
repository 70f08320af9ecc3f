#pragma once

#include <cstdint>
#include <vector>

#include "normsim/genome.hpp"

namespace normsim {

struct Agent {
    std::uint64_t id = 0;  // assigned in creation order, never reused within a run
    Genome genome;
    double energy = 0.0;
    double consumed_this_round = 0.0;
};

/// Energy and population bookkeeping for the round in progress.
struct RoundAccounting {
    double consumed = 0.0;
    double sanction_damage = 0.0;
    double sanction_cost = 0.0;
    double metabolism_paid = 0.0;
    double removed_energy = 0.0;  // energy still held by agents removed at death
    int sanctions = 0;
    int births = 0;
    int deaths = 0;
    int starved_eats = 0;  // turns taken while the resource was empty
};

struct World {
    double resource = 0.0;
    std::vector<Agent> agents;
    int round = 0;
    RoundAccounting accounting;
    std::uint64_t next_agent_id = 0;

    bool extinct() const { return agents.empty(); }

    double total_energy() const {
        double sum = 0.0;
        for (const auto& a : agents) sum += a.energy;
        return sum;
    }
};

}  // namespace normsim
