#include "normsim/mutation.hpp"

#include <algorithm>
#include <cmath>

namespace normsim {

MutationParams MutationParams::from_config(const SimConfig& config) {
    MutationParams p;
    p.probability_per_gene = config.mutation_probability;
    p.variance = config.mutation_variance;
    p.op = config.mutation_operator;
    for (std::size_t i = 0; i < Genome::kGeneCount; ++i) {
        p.active[i] = config.gene_active(i);
    }
    return p;
}

Genome mutate_genome(const Genome& genome, const MutationParams& params, RandomStream& rng) {
    Genome child = genome;
    const double sd = std::sqrt(params.variance);
    for (std::size_t i = 0; i < Genome::kGeneCount; ++i) {
        if (!params.active[i] || !rng.bernoulli(params.probability_per_gene)) {
            continue;
        }
        double& g = child.gene(i);
        if (params.op == MutationOperator::LegacySetToOne) {
            g = 1.0;
        } else {
            g = std::clamp(g + rng.gaussian(0.0, sd), 0.0, 1.0);
        }
    }
    return child;
}

}  // namespace normsim
