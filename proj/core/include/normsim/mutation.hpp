#pragma once

#include <array>

#include "normsim/config.hpp"
#include "normsim/genome.hpp"
#include "normsim/random.hpp"

namespace normsim {

struct MutationParams {
    double probability_per_gene = 0.1;
    double variance = 0.1;
    MutationOperator op = MutationOperator::Gaussian;
    /// Genes that are heritable. Inactive genes are never drawn for or changed.
    std::array<bool, Genome::kGeneCount> active{true, true, true, true, true, true};

    static MutationParams from_config(const SimConfig& config);
};

/// Copy of `genome` with each active gene independently mutated.
///
/// Genes are visited in B, T, S, BN, TN, SN order. Per active gene one trigger
/// draw is consumed; a triggered Gaussian mutation also consumes one normal
/// deviate. Gaussian: gene += N(0, sqrt(variance)), clamped to [0, 1].
/// LegacySetToOne: a triggered gene becomes exactly 1.0.
Genome mutate_genome(const Genome& genome, const MutationParams& params, RandomStream& rng);

}  // namespace normsim
