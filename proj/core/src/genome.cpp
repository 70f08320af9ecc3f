#include "normsim/genome.hpp"

#include <stdexcept>

namespace normsim {

double& Genome::gene(std::size_t index) {
    switch (index) {
        case 0: return bite_size;
        case 1: return sanction_threshold;
        case 2: return sanction_strength;
        case 3: return bite_noise;
        case 4: return threshold_noise;
        case 5: return strength_noise;
        default: throw std::out_of_range("Genome::gene: index out of range");
    }
}

double Genome::gene(std::size_t index) const {
    return const_cast<Genome&>(*this).gene(index);
}

bool Genome::in_unit_range() const {
    for (std::size_t i = 0; i < kGeneCount; ++i) {
        const double g = gene(i);
        if (!(g >= 0.0 && g <= 1.0)) {
            return false;
        }
    }
    return true;
}

std::string_view gene_label(std::size_t index) {
    static constexpr std::array<std::string_view, Genome::kGeneCount> labels{"B", "T", "S", "BN", "TN", "SN"};
    return labels.at(index);
}

}  // namespace normsim
