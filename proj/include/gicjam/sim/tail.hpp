#pragma once

// Log-domain left tail of the noncentral chi-square distribution. The
// simulator needs probabilities far below double-precision underflow, so the
// CDF is evaluated with the Barndorff-Nielsen r* saddlepoint formula, whose
// relative error is O(1/dof) uniformly in the tail.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gicjam::sim {

/// log Phi(z) for the standard normal CDF, accurate for very negative z.
inline double log_normal_cdf(double z)
{
    if (z > -30.0)
        return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

/// log P(X <= x) for X ~ chi'^2(dof, noncentrality).
inline double log_ncx2_cdf(double x, double dof, double noncentrality)
{
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double k = dof, lam = std::max(noncentrality, 0.0);

    // K'(s) = k t + lam t^2 with t = 1/(1-2s).
    const double t = lam > 0.0 ? (-k + std::sqrt(k * k + 4.0 * lam * x)) / (2.0 * lam) : x / k;
    const double s = 0.5 * (1.0 - 1.0 / t);
    const double K = 0.5 * k * std::log(t) + lam * s * t;
    const double K2 = 2.0 * k * t * t + 4.0 * lam * t * t * t;

    const double w2 = std::max(2.0 * (s * x - K), 0.0);
    const double r = std::copysign(std::sqrt(w2), s);
    const double u = s * std::sqrt(K2);

    if (std::abs(r) < 1e-4) {
        const double k2 = 2.0 * (k + 2.0 * lam);
        const double k3 = 8.0 * (k + 3.0 * lam);
        return std::log(0.5 - k3 / (6.0 * std::sqrt(2.0 * std::numbers::pi) * std::pow(k2, 1.5)));
    }
    const double r_star = r + std::log(u / r) / r;
    return log_normal_cdf(r_star);
}

/// P(at least one of `count` independent events of log-probability log_q).
inline double prob_any(double count, double log_q)
{
    if (count <= 0.0 || log_q == -std::numeric_limits<double>::infinity())
        return 0.0;
    if (log_q < -30.0) {
        const double mean = std::exp(std::log(count) + log_q);
        return -std::expm1(-mean);
    }
    return -std::expm1(count * std::log1p(-std::exp(log_q)));
}

/// prob_any with the count given as its natural log (counts may exceed the
/// double range at long blocklengths).
inline double prob_any_log(double log_count, double log_q)
{
    if (log_count == -std::numeric_limits<double>::infinity() || log_q == -std::numeric_limits<double>::infinity())
        return 0.0;
    const double log_mean = log_count + log_q;
    if (log_q < -30.0 || log_mean > 700.0)
        return -std::expm1(-std::exp(std::min(log_mean, 700.0)));
    return -std::expm1(std::exp(log_count) * std::log1p(-std::exp(log_q)));
}

/// log(N - 1) for a book of N = max(1, floor(2^{nR})) messages.
inline double log_others(int n, double R)
{
    const double bits = double(n) * R;
    if (bits < 50.0) {
        const double N = std::max(1.0, std::floor(std::exp2(bits) + 1e-9));
        return N > 1.0 ? std::log(N - 1.0) : -std::numeric_limits<double>::infinity();
    }
    return bits * std::numbers::ln2; // N - 1 == N in double precision
}

/// log N for the same book.
inline double log_book(int n, double R)
{
    const double bits = double(n) * R;
    if (bits < 50.0)
        return std::log(std::max(1.0, std::floor(std::exp2(bits) + 1e-9)));
    return bits * std::numbers::ln2;
}

} // namespace gicjam::sim
