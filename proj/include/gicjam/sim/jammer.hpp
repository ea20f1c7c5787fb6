#pragma once

// Adversary menu. Each jammer knows the code but not the messages, and its
// output always satisfies ||w||^2 <= n * power.

#include "../params.hpp"
#include "codebook.hpp"
#include "rng.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gicjam::sim {

struct StrategyError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum class JammerKind { gaussian_noise, symmetrize, fixed_vector };

struct JammerStrategy
{
    JammerKind kind = JammerKind::gaussian_noise;
    // Power actually used; defaults to the channel's Lambda.
    std::optional<double> power;
    // symmetrize: user whose codeword is counterfeited (0 = the receiver's own user).
    int target_user = 0;
    // fixed_vector: the transmitted sequence.
    std::vector<double> w;

    static JammerStrategy gaussian(std::optional<double> p = {}) { return {JammerKind::gaussian_noise, p, 0, {}}; }
    static JammerStrategy symmetrizer(int target = 0, std::optional<double> p = {})
    {
        return {JammerKind::symmetrize, p, target, {}};
    }
    static JammerStrategy fixed(std::vector<double> w, std::optional<double> p = {})
    {
        return {JammerKind::fixed_vector, p, 0, std::move(w)};
    }

    double power_used(const ChannelConfig& cfg) const
    {
        const double p = power.value_or(cfg.Lambda);
        if (p < 0.0 || p > cfg.Lambda * (1.0 + 1e-12))
            throw StrategyError("jammer power must lie in [0, Lambda]");
        return p;
    }

    int target(int receiver) const { return target_user == 0 ? receiver : target_user; }
};

inline std::string to_string(JammerKind k)
{
    switch (k) {
    case JammerKind::gaussian_noise:
        return "gaussian_noise";
    case JammerKind::symmetrize:
        return "symmetrize";
    case JammerKind::fixed_vector:
        return "fixed_vector";
    }
    return "?";
}

namespace detail {

inline void project_to_ball(std::vector<double>& w, double radius2)
{
    const double e = norm2(w);
    if (e > radius2) {
        const double s = radius2 > 0.0 ? std::sqrt(radius2 / e) : 0.0;
        for (double& v : w)
            v *= s;
    }
}

} // namespace detail

/// Jamming sequence for `receiver`. For symmetrize the caller supplies the
/// counterfeit codeword x_t(m~) of the target user t; the jammer sends
/// (h_rt / g_r) x_t(m~) so that it arrives exactly like a legitimate codeword.
inline std::vector<double> jam(const JammerStrategy& s, int receiver, const ChannelConfig& cfg, int n, Rng& rng,
                               std::span<const double> counterfeit = {})
{
    const double power = s.power_used(cfg);
    const double radius2 = double(n) * power;
    std::vector<double> w(std::size_t(n), 0.0);
    switch (s.kind) {
    case JammerKind::gaussian_noise:
        fill_gaussian(rng, w, power);
        detail::project_to_ball(w, radius2);
        break;
    case JammerKind::symmetrize: {
        const double g = cfg.jammer_gain(receiver);
        if (g == 0.0)
            throw StrategyError("symmetrize: jammer gain is zero at receiver " + std::to_string(receiver));
        if (counterfeit.size() != std::size_t(n))
            throw StrategyError("symmetrize: counterfeit codeword missing");
        const double scale = cfg.gain(receiver, s.target(receiver)) / g;
        for (std::size_t k = 0; k < w.size(); ++k)
            w[k] = scale * counterfeit[k];
        detail::project_to_ball(w, radius2);
        break;
    }
    case JammerKind::fixed_vector:
        if (s.w.size() != std::size_t(n))
            throw StrategyError("fixed_vector: length differs from blocklength");
        if (norm2(s.w) > radius2 * (1.0 + 1e-12))
            throw StrategyError("fixed_vector: exceeds the jammer power constraint");
        w = s.w;
        break;
    }
    return w;
}

struct JamOutput
{
    std::vector<double> w;
    std::optional<Message> counterfeit;
};

/// Jamming against materialized codebooks; symmetrize draws m~ uniformly.
inline JamOutput jam(const JammerStrategy& s, int receiver, const Codebooks& cb, const ChannelConfig& cfg, Rng& rng)
{
    JamOutput out;
    if (s.kind == JammerKind::symmetrize) {
        const int t = s.target(receiver);
        const auto& u = cb.user(t);
        const Message m{uniform_index(rng, u.common_count), uniform_index(rng, u.private_count)};
        const auto x = encode(cb, t, m, cfg.power(t));
        out.w = jam(s, receiver, cfg, cb.n, rng, x);
        out.counterfeit = m;
    } else {
        out.w = jam(s, receiver, cfg, cb.n, rng);
    }
    return out;
}

} // namespace gicjam::sim
