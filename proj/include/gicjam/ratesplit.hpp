#pragma once

// Rate splitting R_i = R_ic + R_ip. Receiver i decodes its own common and
// private messages and the other user's common message; the eight
// decodability inequalities below are projected onto (R1, R2) by
// Fourier-Motzkin elimination.

#include "bounds.hpp"
#include "params.hpp"
#include "region.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace gicjam {

struct SplitRates
{
    double R1c = 0.0, R1p = 0.0, R2c = 0.0, R2p = 0.0;

    double R1() const { return R1c + R1p; }
    double R2() const { return R2c + R2p; }
    double common(int i) const { return i == 1 ? R1c : R2c; }
    double priv(int i) const { return i == 1 ? R1p : R2p; }
    bool nonnegative() const { return R1c >= 0.0 && R1p >= 0.0 && R2c >= 0.0 && R2p >= 0.0; }
};

/// One row of the split system: sum of selected components < bound.
/// Coefficient order (R1c, R1p, R2c, R2p).
struct SplitInequality
{
    std::array<int, 4> coeff{};
    double bound = 0.0;
    double snr = 0.0; // bound == C(snr)
    int receiver = 1;
    std::string label;

    double slack(const SplitRates& s) const
    {
        return bound - (coeff[0] * s.R1c + coeff[1] * s.R1p + coeff[2] * s.R2c + coeff[3] * s.R2p);
    }
};

/// The eight strict inequalities (four per receiver). `gamma` is the power
/// backoff of the codebooks; gamma = 0 gives the limiting system.
inline std::vector<SplitInequality> split_system(const NormalizedParams& p, const AlphaPair& a, double gamma = 0.0)
{
    using detail::C;
    const double g = 1.0 - gamma;
    std::vector<SplitInequality> rows;
    rows.reserve(8);
    for (int i = 1; i <= 2; ++i) {
        const int j = 3 - i;
        const double Si = p.S(i), Ii = p.I(i), Ji = p.J(i);
        const double ai = a.alpha(i), aj = a.alpha(j);
        const double den = 1.0 + Ji + g * aj * Ii;
        const int ic = i == 1 ? 0 : 2, ip = ic + 1, jc = i == 1 ? 2 : 0;
        const std::string tag = std::to_string(i);
        const std::string other = std::to_string(j);

        auto row = [&](std::initializer_list<int> idx, double snr, std::string label) {
            SplitInequality r;
            for (int k : idx)
                r.coeff[std::size_t(k)] = 1;
            r.snr = snr;
            r.bound = C(snr);
            r.receiver = i;
            r.label = std::move(label);
            rows.push_back(std::move(r));
        };
        row({ip}, g * ai * Si / den, "R" + tag + "p");
        row({ip, ic}, g * Si / den, "R" + tag + "p+R" + tag + "c");
        row({ip, jc}, g * (ai * Si + (1.0 - aj) * Ii) / den, "R" + tag + "p+R" + other + "c");
        row({ip, ic, jc}, g * (Si + (1.0 - aj) * Ii) / den, "R" + tag + "p+R" + tag + "c+R" + other + "c");
    }
    return rows;
}

/// Every inequality strict at gamma = 0, under the jammer preconditions.
inline bool split_feasible(const NormalizedParams& p, const AlphaPair& a, const SplitRates& s)
{
    if (p.jammer_dominates() || !alpha_feasible(p, a) || !s.nonnegative())
        return false;
    const auto rows = split_system(p, a);
    return std::ranges::all_of(rows, [&](const SplitInequality& r) { return r.slack(s) > 0.0; });
}

inline double split_min_slack(const NormalizedParams& p, const AlphaPair& a, const SplitRates& s, double gamma = 0.0)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : split_system(p, a, gamma))
        m = std::min(m, r.slack(s));
    return m;
}

namespace detail {

// c . (R1c, R2c, R1, R2) <= b
struct FmRow
{
    std::array<int, 4> c{};
    double b = 0.0;
};

inline std::vector<FmRow> fm_eliminate(const std::vector<FmRow>& rows, std::size_t var)
{
    std::vector<FmRow> keep, upper, lower;
    for (const auto& r : rows) {
        if (r.c[var] > 0)
            upper.push_back(r);
        else if (r.c[var] < 0)
            lower.push_back(r);
        else
            keep.push_back(r);
    }
    for (const auto& u : upper)
        for (const auto& l : lower) {
            const int mu = -l.c[var];
            const int ml = u.c[var];
            FmRow n;
            for (std::size_t k = 0; k < 4; ++k)
                n.c[k] = mu * u.c[k] + ml * l.c[k];
            n.b = mu * u.b + ml * l.b;
            keep.push_back(n);
        }
    return keep;
}

} // namespace detail

/// Projection of the split system onto (R1, R2).
///
/// R1p = R1 - R1c and R2p = R2 - R2c are substituted, then R1c and R2c are
/// eliminated together with the four nonnegativity constraints. Coefficients
/// stay small integers; only the bounds are floating point. Redundant rows are
/// removed afterwards. Empty when the jammer preconditions fail.
inline RateRegion fme_project(const NormalizedParams& p, const AlphaPair& a, double gamma = 0.0)
{
    if (p.jammer_dominates() || !alpha_feasible(p, a))
        return RateRegion::make_empty();

    std::vector<detail::FmRow> rows;
    for (const auto& s : split_system(p, a, gamma)) {
        // (R1c, R1p, R2c, R2p) -> (R1c, R2c, R1, R2)
        detail::FmRow r;
        r.c[0] = s.coeff[0] - s.coeff[1];
        r.c[1] = s.coeff[2] - s.coeff[3];
        r.c[2] = s.coeff[1];
        r.c[3] = s.coeff[3];
        r.b = s.bound;
        rows.push_back(r);
    }
    rows.push_back({{-1, 0, 0, 0}, 0.0}); // R1c >= 0
    rows.push_back({{1, 0, -1, 0}, 0.0}); // R1p >= 0
    rows.push_back({{0, -1, 0, 0}, 0.0}); // R2c >= 0
    rows.push_back({{0, 1, 0, -1}, 0.0}); // R2p >= 0

    rows = detail::fm_eliminate(rows, 0);
    rows = detail::fm_eliminate(rows, 1);

    std::map<std::pair<int, int>, double> tightest;
    for (const auto& r : rows) {
        const int a1 = r.c[2], a2 = r.c[3];
        if (a1 <= 0 && a2 <= 0) {
            if (r.b < -kBoundaryTol && a1 == 0 && a2 == 0)
                return RateRegion::make_empty();
            if (r.b >= 0.0)
                continue; // implied by R >= 0
        }
        auto [it, fresh] = tightest.try_emplace({a1, a2}, r.b);
        if (!fresh)
            it->second = std::min(it->second, r.b);
    }

    RateRegion out;
    out.open = true;
    for (const auto& [shape, b] : tightest)
        out.halfspaces.push_back({shape.first, shape.second, b});
    return remove_redundant(std::move(out));
}

/// Variance of the Gaussian-channel information density at `snr`, in bits^2
/// per channel use. The finite-blocklength shortfall of a row scales with its
/// square root.
inline double gaussian_dispersion(double snr)
{
    const double l2e = std::numbers::log2e;
    return snr * (snr + 2.0) / (2.0 * (snr + 1.0) * (snr + 1.0)) * l2e * l2e;
}

enum class SplitObjective {
    slack,     // smallest slack in bits
    normalized // smallest slack / sqrt(dispersion)
};

struct SplitChoice
{
    SplitRates rates;
    double min_slack = 0.0; // smallest slack in bits at the chosen split
    double score = 0.0;     // value of the objective
};

/// Split of (R1, R2) into common/private parts maximizing the worst row of
/// the split system under `objective`, searched on a (steps+1)^2 grid of
/// common rates. The score is negative when no split works.
inline SplitChoice choose_split(const NormalizedParams& p, const AlphaPair& a, double R1, double R2, int steps = 200,
                                double gamma = 0.0, SplitObjective objective = SplitObjective::slack)
{
    SplitChoice best;
    best.score = -std::numeric_limits<double>::infinity();
    const auto rows = split_system(p, a, gamma);
    std::vector<double> scale(rows.size(), 1.0);
    if (objective == SplitObjective::normalized)
        for (std::size_t k = 0; k < rows.size(); ++k)
            scale[k] = 1.0 / std::sqrt(std::max(gaussian_dispersion(rows[k].snr), 1e-12));
    for (int u = 0; u <= steps; ++u)
        for (int v = 0; v <= steps; ++v) {
            const double c1 = R1 * u / steps, c2 = R2 * v / steps;
            const SplitRates s{c1, R1 - c1, c2, R2 - c2};
            double score = std::numeric_limits<double>::infinity();
            double slack = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const double sl = rows[k].slack(s);
                slack = std::min(slack, sl);
                score = std::min(score, sl * (sl > 0.0 ? scale[k] : 1.0));
            }
            if (score > best.score) {
                best.score = score;
                best.min_slack = slack;
                best.rates = s;
            }
        }
    return best;
}

} // namespace gicjam
