#pragma once

// Symmetric operating points for simulation: a target rate expressed as a
// multiple of the inner or outer symmetric-capacity bound, the power split at
// the grid optimum, and a common/private split of that rate. The split
// maximizes the dispersion-normalized worst margin of the split system, which
// protects the rows with many jointly decoded messages at finite blocklength.

#include "../bounds.hpp"
#include "../ratesplit.hpp"
#include "codebook.hpp"

#include <string>

namespace gicjam::sim {

enum class RateReference { inner, outer };

struct OperatingPoint
{
    AlphaPair alpha;
    SplitRates rates;
    double rate = 0.0;      // per-user target
    double reference = 0.0; // the bound the target is scaled from
    double min_slack = 0.0; // of the split system at the chosen split
};

inline OperatingPoint symmetric_operating_point(const NormalizedParams& p, double scale, RateReference ref,
                                                double gamma = 0.0, double alpha_step = 1e-3, int split_steps = 200)
{
    if (p.S1 != p.S2 || p.I1 != p.I2 || p.J1 != p.J2)
        throw ConfigError("operating point: symmetric parameters required");
    const auto b = symcap_bounds(p.S1, p.I1, p.J1, alpha_step);
    if (b.best_alpha < 0.0)
        throw ConfigError("operating point: no feasible alpha");
    OperatingPoint op;
    op.alpha = {b.best_alpha, b.best_alpha};
    op.reference = ref == RateReference::inner ? b.lower : b.upper;
    op.rate = scale * op.reference;
    const auto split = choose_split(p, op.alpha, op.rate, op.rate, split_steps, gamma, SplitObjective::normalized);
    op.rates = split.rates;
    op.min_slack = split.min_slack;
    return op;
}

} // namespace gicjam::sim
