// Seeded random stream shared by every stochastic step of a run.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The distributions on top of it are implemented here rather than
// taken from <random>, because the standard leaves distribution algorithms
// up to the library vendor and outputs must match across toolchains.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace normsim {

/// Written into every output header so files record how they were drawn.
inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64/v1";

/// One step of the splitmix64 sequence, used for seed mixing.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replicate `index` in a batch started from `master_seed`.
///
/// The derivation is stateless, so a replicate's stream does not depend on
/// which other replicates run or in which order.
std::uint64_t derive_substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    static RandomStream for_replicate(std::uint64_t master_seed, std::uint64_t index) {
        return RandomStream(derive_substream_seed(master_seed, index));
    }

    std::uint64_t seed() const noexcept { return seed_; }

    /// Raw 64-bit engine output.
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();

    /// Uniform on [lo, hi); returns lo when lo == hi. Throws std::invalid_argument if lo > hi.
    double uniform(double lo, double hi);

    /// Normal(mean, sd). sd == 0 returns mean without advancing the stream.
    /// Throws std::invalid_argument if sd < 0.
    double gaussian(double mean, double sd);

    /// True with probability p.
    bool bernoulli(double p) { return uniform01() < p; }

    /// Unbiased integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Fisher-Yates shuffle in place.
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    double spare_gaussian_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace normsim
