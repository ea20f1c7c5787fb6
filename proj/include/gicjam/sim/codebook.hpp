#pragma once

// Superposition Gaussian codebooks for the rate-split scheme.
//
// User i has 2^{n R_ic} common codewords with variance (1-gamma)(1-alpha_i)P_i
// and, for each common index, 2^{n R_ip} private codewords with variance
// (1-gamma) alpha_i P_i.

#include "../params.hpp"
#include "../ratesplit.hpp"
#include "../region.hpp"
#include "rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gicjam::sim {

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// exhaustive: materialized codebooks and the full minimum-distance decoder.
/// ensemble: random-coding average; true codewords are drawn per trial and
/// competing codewords are accounted for analytically (see simulate.hpp).
enum class SimMode { exhaustive, ensemble };

inline constexpr double kMaxTriplesPerReceiver = double(1u << 24);
inline constexpr double kMaxStoredDoubles = double(1u << 25);

struct SimConfig
{
    ChannelConfig cfg;
    int n = 64;
    SplitRates rates;
    AlphaPair alpha;
    // Power backoff. Too small and the power-limit fallback fires often
    // (about 20% of codewords at n = 512, gamma = 0.05); too large and the
    // effective SNR drops.
    double gamma = 0.15;
    // Relative typicality slack: second moments must match within
    // epsilon * (product of standard deviations).
    double epsilon = 0.25;
    int trials = 1000;
    std::uint64_t seed = 1;
    SimMode mode = SimMode::exhaustive;

    void validate() const
    {
        cfg.validate();
        if (n <= 0)
            throw ConfigError("SimConfig: blocklength must be positive");
        if (!rates.nonnegative())
            throw ConfigError("SimConfig: rates must be nonnegative");
        if (!alpha.valid())
            throw ConfigError("SimConfig: alpha must lie in [0,1]^2");
        if (!(gamma > 0.0 && gamma < 1.0))
            throw ConfigError("SimConfig: gamma must lie in (0,1)");
        if (!(epsilon > 0.0))
            throw ConfigError("SimConfig: epsilon must be positive");
        if (trials <= 0)
            throw ConfigError("SimConfig: trials must be positive");
    }

    double common_variance(int i) const { return (1.0 - gamma) * (1.0 - alpha.alpha(i)) * cfg.power(i); }
    double private_variance(int i) const { return (1.0 - gamma) * alpha.alpha(i) * cfg.power(i); }
};

/// Number of messages floor(2^{nR}), at least 1.
inline double book_size(int n, double R)
{
    return std::max(1.0, std::floor(std::exp2(double(n) * R) + 1e-9));
}

struct Codebook
{
    std::size_t count = 0;
    int n = 0;
    double variance = 0.0;
    std::vector<double> data;

    std::span<const double> word(std::size_t k) const
    {
        return {data.data() + k * std::size_t(n), std::size_t(n)};
    }
};

struct UserBooks
{
    Codebook common;
    Codebook priv; // indexed by common * private_count + private
    std::size_t common_count = 1;
    std::size_t private_count = 1;

    std::span<const double> private_word(std::size_t mc, std::size_t mp) const
    {
        return priv.word(mc * private_count + mp);
    }
    std::size_t messages() const { return common_count * private_count; }
};

struct Codebooks
{
    int n = 0;
    std::array<UserBooks, 2> users;

    const UserBooks& user(int i) const { return users[std::size_t(i - 1)]; }
};

struct Message
{
    std::size_t common = 0;
    std::size_t priv = 0;
    bool operator==(const Message&) const = default;
};

inline double dot(std::span<const double> a, std::span<const double> b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

namespace detail {

inline Codebook draw_book(std::uint64_t seed, std::uint64_t stream, std::size_t count, int n, double variance)
{
    Codebook b;
    b.count = count;
    b.n = n;
    b.variance = variance;
    b.data.resize(count * std::size_t(n));
    auto rng = substream(seed, stream);
    fill_gaussian(rng, b.data, variance);
    return b;
}

} // namespace detail

/// Materializes all four books; a pure function of (seed, SimConfig).
/// Throws ConfigError when the index space or storage exceeds desk scale.
inline Codebooks build_codebooks(const SimConfig& sc)
{
    sc.validate();
    const double n1c = book_size(sc.n, sc.rates.R1c), n1p = book_size(sc.n, sc.rates.R1p);
    const double n2c = book_size(sc.n, sc.rates.R2c), n2p = book_size(sc.n, sc.rates.R2p);
    if (n1c * n1p * n2c > kMaxTriplesPerReceiver || n2c * n2p * n1c > kMaxTriplesPerReceiver)
        throw ConfigError("build_codebooks: decoder index space exceeds 2^24 triples; lower n*R or use ensemble mode");
    const double stored = (n1c + n1c * n1p + n2c + n2c * n2p) * sc.n;
    if (stored > kMaxStoredDoubles)
        throw ConfigError("build_codebooks: codebooks exceed desk-scale memory; lower n*R or use ensemble mode");

    Codebooks cb;
    cb.n = sc.n;
    const std::array<std::pair<double, double>, 2> sizes{{{n1c, n1p}, {n2c, n2p}}};
    for (int i = 1; i <= 2; ++i) {
        auto& u = cb.users[std::size_t(i - 1)];
        u.common_count = std::size_t(sizes[std::size_t(i - 1)].first);
        u.private_count = std::size_t(sizes[std::size_t(i - 1)].second);
        u.common = detail::draw_book(sc.seed, 100 + 2 * std::uint64_t(i), u.common_count, sc.n, sc.common_variance(i));
        u.priv = detail::draw_book(sc.seed, 101 + 2 * std::uint64_t(i), u.common_count * u.private_count, sc.n,
                                   sc.private_variance(i));
    }
    return cb;
}

/// x = x_c + x_p when ||x||^2 < n P, otherwise the zero vector.
inline std::vector<double> superpose(std::span<const double> xc, std::span<const double> xp, double P)
{
    std::vector<double> x(xc.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = xc[k] + xp[k];
    if (!(norm2(x) < double(x.size()) * P))
        std::ranges::fill(x, 0.0);
    return x;
}

inline std::vector<double> encode(const Codebooks& cb, int user, const Message& m, double P)
{
    const auto& u = cb.user(user);
    if (m.common >= u.common_count || m.priv >= u.private_count)
        throw std::out_of_range("encode: message index out of range");
    return superpose(u.common.word(m.common), u.private_word(m.common, m.priv), P);
}

} // namespace gicjam::sim
