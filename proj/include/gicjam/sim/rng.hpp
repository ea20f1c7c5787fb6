#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace gicjam::sim {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, index). Trials and codebooks
/// draw from their own substreams so results do not depend on scheduling.
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
{
    auto lo = [](std::uint64_t v) { return std::uint32_t(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return std::uint32_t(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Rng(seq);
}

inline void fill_gaussian(Rng& rng, std::span<double> out, double variance)
{
    if (variance <= 0.0) {
        std::ranges::fill(out, 0.0);
        return;
    }
    std::normal_distribution<double> nd(0.0, std::sqrt(variance));
    for (double& v : out)
        v = nd(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n)
{
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

} // namespace gicjam::sim
