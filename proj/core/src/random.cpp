#include "normsim/random.hpp"

#include <cmath>
#include <stdexcept>

namespace normsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

double RandomStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    if (lo > hi) {
        throw std::invalid_argument("uniform: lower bound exceeds upper bound");
    }
    if (lo == hi) {
        return lo;
    }
    const double v = lo + (hi - lo) * uniform01();
    // lo + width * u can round up to hi for u close to 1
    return v < hi ? v : std::nextafter(hi, lo);
}

double RandomStream::gaussian(double mean, double sd) {
    if (sd < 0.0 || std::isnan(sd)) {
        throw std::invalid_argument("gaussian: standard deviation must be non-negative");
    }
    if (sd == 0.0) {
        return mean;
    }
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_gaussian_;
    }
    // Marsaglia polar method; yields two independent deviates per accepted pair.
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_gaussian_ = v * factor;
    has_spare_ = true;
    return mean + sd * (u * factor);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("below: empty range");
    }
    // Reject the lowest 2^64 mod n outputs so the remaining range is a multiple of n.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) return x % n;
    }
}

}  // namespace normsim
