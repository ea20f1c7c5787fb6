#pragma once

// Symmetric degrees of freedom with I = S^beta and J = S^delta.

#include "bounds.hpp"
#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gicjam {

struct DofPoint
{
    double beta = 0.0;
    double delta = 0.0;
    double value = 0.0;
};

inline double dof_closed_form(double beta, double delta)
{
    const double a = std::max(0.0, 1.0 - delta);
    const double b = std::max({0.0, 1.0 - beta, beta - delta});
    const double c = std::max({0.0, 1.0 - beta / 2.0 - delta / 2.0, beta / 2.0 - delta / 2.0});
    return std::min({a, b, c});
}

struct DofSample
{
    double S = 0.0;
    double lower = 0.0; // inner bound / C(S)
    double upper = 0.0; // outer bound / C(S)
};

/// Normalized symmetric-capacity bounds along a ladder of S values.
inline std::vector<DofSample> dof_numeric(double beta, double delta, const std::vector<double>& S_list,
                                          double grid_step = 1e-3)
{
    std::vector<DofSample> out;
    out.reserve(S_list.size());
    for (double S : S_list) {
        const auto b = symcap_bounds(S, std::pow(S, beta), std::pow(S, delta), grid_step);
        const double c = capacity_fn(S);
        out.push_back({S, b.lower / c, b.upper / c});
    }
    return out;
}

/// S = 10^2 ... 10^6.
inline std::vector<double> default_S_ladder() { return {1e2, 1e3, 1e4, 1e5, 1e6}; }

/// Whether alpha = (1+S^delta)/(1+S^delta+S^beta) satisfies
/// alpha S + (1-alpha) S^beta > S^delta at this S.
inline bool suboptimal_alpha_feasible_at_scale(double beta, double delta, double S)
{
    const double I = std::pow(S, beta);
    const double J = std::pow(S, delta);
    const double alpha = (1.0 + J) / (1.0 + J + I);
    return alpha * S + (1.0 - alpha) * I > J;
}

/// Smallest ladder point from which the sub-optimal alpha stays feasible up
/// to the end of the ladder; -1 when it is infeasible at the last point.
inline double suboptimal_alpha_threshold(double beta, double delta, const std::vector<double>& S_ladder)
{
    double threshold = -1.0;
    for (auto it = S_ladder.rbegin(); it != S_ladder.rend(); ++it) {
        if (!suboptimal_alpha_feasible_at_scale(beta, delta, *it))
            break;
        threshold = *it;
    }
    return threshold;
}

} // namespace gicjam
