#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace normsim {

/// The three behavioural traits. Each has a value gene and a noise gene.
enum class Trait : std::size_t { Bite = 0, Threshold = 1, Strength = 2 };

inline constexpr std::array<Trait, 3> kTraits{Trait::Bite, Trait::Threshold, Trait::Strength};

/// Heritable traits of an agent. All six genes stay in [0, 1].
struct Genome {
    double bite_size = 0.0;
    double sanction_threshold = 0.0;
    double sanction_strength = 0.0;
    double bite_noise = 0.0;       // sd of per-use draws of bite_size
    double threshold_noise = 0.0;  // sd of per-use draws of sanction_threshold
    double strength_noise = 0.0;   // sd of per-use draws of sanction_strength

    static constexpr std::size_t kGeneCount = 6;

    /// Gene by position in the fixed order B, T, S, BN, TN, SN.
    double& gene(std::size_t index);
    double gene(std::size_t index) const;

    double& value(Trait t) { return gene(static_cast<std::size_t>(t)); }
    double value(Trait t) const { return gene(static_cast<std::size_t>(t)); }
    double& noise(Trait t) { return gene(static_cast<std::size_t>(t) + 3); }
    double noise(Trait t) const { return gene(static_cast<std::size_t>(t) + 3); }

    bool in_unit_range() const;

    friend bool operator==(const Genome&, const Genome&) = default;
};

/// Short column label of a gene: "B", "T", "S", "BN", "TN", "SN".
std::string_view gene_label(std::size_t index);

}  // namespace normsim
