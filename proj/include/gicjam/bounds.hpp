#pragma once

// Outer bound, fixed-alpha Han-Kobayashi region, the jammer-constrained
// union, symmetric-capacity bounds, regime tests and the half-bit check.
// Everything works on NormalizedParams; the jammer enters through the
// primed ratios S' = S/(1+J), I' = I/(1+J).

#include "params.hpp"
#include "region.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gicjam {

namespace detail {

inline double C(double x) { return capacity_fn(std::max(x, 0.0)); }

} // namespace detail

/// Outer bound evaluated at (S', I'). Empty when S_i <= J_i on either side.
inline RateRegion outer_region(const NormalizedParams& p)
{
    using detail::C;
    if (p.jammer_dominates())
        return RateRegion::make_empty();
    const double S1 = p.S_primed(1), S2 = p.S_primed(2);
    const double I1 = p.I_primed(1), I2 = p.I_primed(2);

    const double sum_z1 = C((S1 + I1 + I1 * I2) / (1.0 + I2));
    const double sum_z2 = C((S2 + I2 + I1 * I2) / (1.0 + I1));

    RateRegion r;
    r.halfspaces = {
        {1, 0, C(S1)},
        {0, 1, C(S2)},
        {1, 1, C(S1 / (1.0 + I2)) + C(I2 + S2)},
        {1, 1, C(S2 / (1.0 + I1)) + C(I1 + S1)},
        {1, 1, sum_z1 + sum_z2},
        {2, 1, C(S1 / (1.0 + I2)) + C(S1 + I1) + sum_z2},
        {1, 2, C(S2 / (1.0 + I1)) + C(S2 + I2) + sum_z1},
    };
    return r;
}

/// Seven Han-Kobayashi halfspaces at fixed alpha for jammer-free ratios
/// (S, I); the caller passes primed values.
inline std::vector<Halfspace> hk_halfspaces(double S1, double S2, double I1, double I2, const AlphaPair& a)
{
    using detail::C;
    const double a1 = a.alpha1, a2 = a.alpha2;
    const double b1 = 1.0 - a1, b2 = 1.0 - a2;
    const double d1 = 1.0 + a2 * I1; // private interference + noise at receiver 1
    const double d2 = 1.0 + a1 * I2;

    const double all1 = C((S1 + b2 * I1) / d1);      // own message + other common
    const double all2 = C((S2 + b1 * I2) / d2);
    const double priv1 = C(a1 * S1 / d1);            // own private only
    const double priv2 = C(a2 * S2 / d2);
    const double pc1 = C((a1 * S1 + b2 * I1) / d1);  // own private + other common
    const double pc2 = C((a2 * S2 + b1 * I2) / d2);

    return {
        {1, 0, C(S1 / d1)},
        {0, 1, C(S2 / d2)},
        {1, 1, all1 + priv2},
        {1, 1, all2 + priv1},
        {1, 1, pc1 + pc2},
        {2, 1, all1 + priv1 + pc2},
        {1, 2, all2 + priv2 + pc1},
    };
}

/// Fixed-alpha Han-Kobayashi region at (S', I'). Strict inequalities, so the
/// result is flagged open.
inline RateRegion hk_region(const NormalizedParams& p, const AlphaPair& a)
{
    RateRegion r;
    r.halfspaces = hk_halfspaces(p.S_primed(1), p.S_primed(2), p.I_primed(1), p.I_primed(2), a);
    r.open = true;
    return r;
}

/// alpha_i S_i + (1 - alpha_j) I_i > J_i for (i,j) = (1,2), (2,1), on the
/// unprimed ratios.
inline bool alpha_feasible(const NormalizedParams& p, const AlphaPair& a)
{
    return a.alpha1 * p.S1 + (1.0 - a.alpha2) * p.I1 > p.J1 &&
           a.alpha2 * p.S2 + (1.0 - a.alpha1) * p.I2 > p.J2;
}

/// Grid {0, 1/M, ..., 1} with M = round(1/step). Index based so that a
/// coarser grid is an exact subset of any finer grid that refines it.
inline std::vector<double> alpha_grid(double step)
{
    const auto M = static_cast<long>(std::llround(1.0 / step));
    std::vector<double> g;
    g.reserve(std::size_t(M) + 1);
    for (long k = 0; k <= M; ++k)
        g.push_back(double(k) / double(M));
    return g;
}

/// Union of hk_region over the feasible points of the alpha grid.
/// Empty when S_i <= J_i or grid_step is out of (0, 0.1].
inline UnionRegion tilde_inner_region(const NormalizedParams& p, double grid_step = 1e-2)
{
    UnionRegion u;
    if (p.jammer_dominates() || !(grid_step > 0.0) || grid_step > 0.1)
        return u;
    const auto grid = alpha_grid(grid_step);
    for (double a1 : grid)
        for (double a2 : grid) {
            const AlphaPair a{a1, a2};
            if (alpha_feasible(p, a))
                u.members.push_back({a, hk_region(p, a)});
        }
    return u;
}

// ---------------------------------------------------------------------------
// Symmetric capacity

/// min over the four symmetric Han-Kobayashi terms at a common alpha, on
/// primed symmetric ratios.
inline double hk_symmetric_rate(double Sp, double Ip, double alpha)
{
    using detail::C;
    const double ab = 1.0 - alpha;
    const double d = 1.0 + alpha * Ip;
    const double all = C((Sp + ab * Ip) / d);
    const double priv = C(alpha * Sp / d);
    const double pc = C((alpha * Sp + ab * Ip) / d);
    return std::min({C(Sp / d), 0.5 * (all + priv), pc, (all + priv + pc) / 3.0});
}

/// Symmetric rate of the outer bound on primed symmetric ratios.
inline double outer_symmetric_rate(double Sp, double Ip)
{
    using detail::C;
    const double a = C(Sp / (1.0 + Ip));
    const double b = C(Sp + Ip);
    const double z = C((Sp + Ip + Ip * Ip) / (1.0 + Ip));
    return std::min({C(Sp), 0.5 * (a + b), z, (a + b + z) / 3.0});
}

struct SymcapBounds
{
    double lower = 0.0;       // jammer-constrained inner bound
    double upper = 0.0;       // outer bound
    double hk = 0.0;          // Han-Kobayashi at S', I' without the alpha constraint
    double hk_suboptimal = 0.0; // Han-Kobayashi at alpha = 1/(1+I')
    double best_alpha = -1.0;   // argmax for `lower`; -1 when no alpha is feasible
    double best_alpha_hk = -1.0;
};

/// Bounds on the symmetric capacity C_sym(S, I, J).
///
/// The alpha candidates are the uniform grid plus alpha = 1/(1+I'); the
/// latter is the large-S optimum and is far below any fixed grid spacing when
/// I' is large. Ties go to the smaller alpha.
inline SymcapBounds symcap_bounds(double S, double I, double J, double grid_step = 1e-3)
{
    SymcapBounds out;
    if (S <= J)
        return out;
    const double Sp = S / (1.0 + J);
    const double Ip = I / (1.0 + J);
    out.upper = outer_symmetric_rate(Sp, Ip);

    const double a_sub = 1.0 / (1.0 + Ip);
    out.hk_suboptimal = hk_symmetric_rate(Sp, Ip, a_sub);

    auto candidates = alpha_grid(grid_step);
    candidates.push_back(a_sub);
    std::ranges::sort(candidates);

    double best = -1.0, best_hk = -1.0;
    for (double a : candidates) {
        const double v = hk_symmetric_rate(Sp, Ip, a);
        if (v > best_hk) {
            best_hk = v;
            out.best_alpha_hk = a;
        }
        if (a * S + (1.0 - a) * I > J && v > best) {
            best = v;
            out.best_alpha = a;
        }
    }
    out.hk = std::max(best_hk, 0.0);
    out.lower = std::max(best, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Regimes

enum class Regime { weak, strong, mixed };

inline std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::weak:
        return "weak";
    case Regime::strong:
        return "strong";
    case Regime::mixed:
        return "mixed";
    }
    return "?";
}

inline bool strong_interference(const NormalizedParams& p)
{
    return p.I_primed(2) >= p.S_primed(1) && p.I_primed(1) >= p.S_primed(2);
}

/// sqrt(I'_j / S'_i) (1 + I'_i) <= rho_i (1 - rho_j) for both orders.
inline bool weak_interference(const NormalizedParams& p, double rho1, double rho2)
{
    auto lhs = [&](int i, int j) {
        const double Ij = p.I_primed(j), Si = p.S_primed(i);
        if (Ij == 0.0)
            return 0.0;
        if (Si == 0.0)
            return std::numeric_limits<double>::infinity();
        return std::sqrt(Ij / Si) * (1.0 + p.I_primed(i));
    };
    return lhs(1, 2) <= rho1 * (1.0 - rho2) && lhs(2, 1) <= rho2 * (1.0 - rho1);
}

inline Regime regime_classify(const NormalizedParams& p, double rho1, double rho2)
{
    if (strong_interference(p))
        return Regime::strong;
    if (weak_interference(p, rho1, rho2))
        return Regime::weak;
    return Regime::mixed;
}

/// Regime with (rho1, rho2) searched over [0,1]^2 at `rho_step`.
inline Regime regime_classify(const NormalizedParams& p, double rho_step = 0.01)
{
    if (strong_interference(p))
        return Regime::strong;
    const auto M = std::llround(1.0 / rho_step);
    for (long long u = 0; u <= M; ++u)
        for (long long v = 0; v <= M; ++v)
            if (weak_interference(p, double(u) / double(M), double(v) / double(M)))
                return Regime::weak;
    return Regime::mixed;
}

// ---------------------------------------------------------------------------
// Half-bit certificate

/// alpha_1 = 1/(1+I'_2), alpha_2 = 1/(1+I'_1).
inline AlphaPair halfbit_alpha(const NormalizedParams& p)
{
    return {1.0 / (1.0 + p.I_primed(2)), 1.0 / (1.0 + p.I_primed(1))};
}

/// True when the half-bit choice of alpha meets the jammer constraint, so
/// the inner and outer bounds are within half a bit.
inline bool halfbit_certificate(const NormalizedParams& p)
{
    if (p.jammer_dominates())
        return false;
    return alpha_feasible(p, halfbit_alpha(p));
}

/// The closed-form J condition as it is usually printed,
/// J_i < S_i/(1+I'_j) + I_i^2/(1+I'_i). It does not coincide with substituting
/// the half-bit alpha into the feasibility test (which gives
/// S_i/(1+I'_j) + I_i I'_i/(1+I'_i)); reported for comparison only.
inline bool halfbit_printed_condition(const NormalizedParams& p)
{
    const double r1 = p.S1 / (1.0 + p.I_primed(2)) + p.I1 * p.I1 / (1.0 + p.I_primed(1));
    const double r2 = p.S2 / (1.0 + p.I_primed(1)) + p.I2 * p.I2 / (1.0 + p.I_primed(2));
    return p.J1 < r1 && p.J2 < r2;
}

} // namespace gicjam
