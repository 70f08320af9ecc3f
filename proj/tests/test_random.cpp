#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "normsim/random.hpp"

namespace normsim {
namespace {

TEST(RandomStream, UniformDegenerateRangeReturnsBound) {
    RandomStream rng(1);
    EXPECT_EQ(rng.uniform(0.3, 0.3), 0.3);
}

TEST(RandomStream, UniformRejectsInvertedRange) {
    RandomStream rng(1);
    EXPECT_THROW(rng.uniform(0.6, 0.2), std::invalid_argument);
}

TEST(RandomStream, UniformStaysInHalfOpenRange) {
    RandomStream rng(99);
    for (int i = 0; i < 100000; ++i) {
        const double v = rng.uniform(0.25, 0.75);
        ASSERT_GE(v, 0.25);
        ASSERT_LT(v, 0.75);
    }
}

TEST(RandomStream, UniformMeanMatchesMoments) {
    RandomStream rng(2024);
    constexpr int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.uniform(0.0, 1.0);
    const double tolerance = 3.0 / std::sqrt(12.0 * n);
    EXPECT_NEAR(sum / n, 0.5, tolerance);
}

TEST(RandomStream, SameSeedSameSequence) {
    RandomStream a(42);
    RandomStream b(42);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.uniform(0.0, 1.0), b.uniform(0.0, 1.0));
        ASSERT_EQ(a.gaussian(0.0, 1.0), b.gaussian(0.0, 1.0));
        ASSERT_EQ(a.below(17), b.below(17));
    }
}

TEST(RandomStream, CopiedStreamReplaysDraws) {
    RandomStream a(5);
    a.gaussian(0.0, 1.0);  // leaves a spare deviate cached
    RandomStream b = a;
    EXPECT_EQ(a.gaussian(1.0, 2.0), b.gaussian(1.0, 2.0));
    EXPECT_EQ(a.uniform01(), b.uniform01());
}

TEST(RandomStream, KnownFirstOutputsOfEngine) {
    // std::mt19937_64 default-seeded 10000th output is fixed by the standard.
    RandomStream rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next_u64();
    EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(RandomStream, GaussianZeroSdReturnsMeanWithoutDrawing) {
    RandomStream a(3);
    RandomStream b(3);
    EXPECT_EQ(a.gaussian(0.5, 0.0), 0.5);
    EXPECT_EQ(a.uniform01(), b.uniform01());
}

TEST(RandomStream, GaussianRejectsNegativeSd) {
    RandomStream rng(3);
    EXPECT_THROW(rng.gaussian(0.0, -0.1), std::invalid_argument);
}

TEST(RandomStream, GaussianSampleVarianceNearOne) {
    RandomStream rng(77);
    constexpr int n = 100000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.gaussian(0.0, 1.0);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    EXPECT_NEAR(ss / (n - 1), 1.0, 0.02);
    EXPECT_NEAR(mean, 0.0, 3.0 / std::sqrt(n));
}

TEST(RandomStream, BelowIsInRangeAndCoversIt) {
    RandomStream rng(11);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
    EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(Shuffle, EmptyAndSingleton) {
    RandomStream rng(1);
    std::vector<int> empty;
    rng.shuffle(std::span<int>(empty));
    EXPECT_TRUE(empty.empty());

    std::vector<int> one{42};
    rng.shuffle(std::span<int>(one));
    EXPECT_EQ(one, std::vector<int>{42});
}

TEST(Shuffle, PreservesMultiset) {
    RandomStream rng(8);
    std::vector<int> items(50);
    std::iota(items.begin(), items.end(), 0);
    for (int rep = 0; rep < 20; ++rep) {
        rng.shuffle(std::span<int>(items));
        auto sorted = items;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 50; ++i) ASSERT_EQ(sorted[static_cast<std::size_t>(i)], i);
    }
}

TEST(Shuffle, ThreeItemPermutationsAreUniform) {
    RandomStream rng(123456);
    constexpr int n = 100000;
    std::map<std::array<char, 3>, int> counts;
    for (int i = 0; i < n; ++i) {
        std::array<char, 3> items{'a', 'b', 'c'};
        rng.shuffle(std::span<char>(items));
        ++counts[items];
    }
    ASSERT_EQ(counts.size(), 6u);
    for (const auto& [perm, count] : counts) {
        EXPECT_NEAR(static_cast<double>(count) / n, 1.0 / 6.0, 0.01);
    }
}

TEST(Substreams, DerivationIsStatelessAndDistinct) {
    EXPECT_EQ(derive_substream_seed(42, 3), derive_substream_seed(42, 3));
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_substream_seed(42, i));
    EXPECT_EQ(seeds.size(), 1000u);
    EXPECT_NE(derive_substream_seed(42, 0), derive_substream_seed(43, 0));
}

TEST(Substreams, NeighbouringReplicatesAreUncorrelated) {
    RandomStream a = RandomStream::for_replicate(7, 0);
    RandomStream b = RandomStream::for_replicate(7, 1);
    constexpr int n = 50000;
    double sab = 0.0;
    double sa = 0.0;
    double sb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a.uniform01() - 0.5;
        const double y = b.uniform01() - 0.5;
        sab += x * y;
        sa += x * x;
        sb += y * y;
    }
    const double corr = sab / std::sqrt(sa * sb);
    EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(n));
}

}  // namespace
}  // namespace normsim
