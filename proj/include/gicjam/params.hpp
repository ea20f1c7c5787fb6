#pragma once

// Channel parameterization for the two-user Gaussian interference channel
// with jammers: physical configuration, SNR/INR/JNR normalization, the
// capacity function, and the reduction of G cross jammers to two.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gicjam {

/// C(x) = 1/2 log2(1 + x), in bits per channel use.
inline double capacity_fn(double x)
{
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("capacity_fn: argument must be finite and nonnegative, got " +
                                std::to_string(x));
    return 0.5 * std::log2(1.0 + x);
}

/// Physical parameters of the 2-user / 2-jammer channel.
///
///   y1 = h11 x1 + h12 x2 + g1 w1 + v1
///   y2 = h21 x1 + h22 x2 + g2 w2 + v2
///
/// with ||x_i||^2 <= n P_i, ||w_i||^2 <= n Lambda and v_i ~ N(0, sigma2 I).
struct ChannelConfig
{
    double h11 = 1.0, h12 = 0.0, h21 = 0.0, h22 = 1.0;
    double g1 = 0.0, g2 = 0.0;
    double P1 = 1.0, P2 = 1.0;
    double Lambda = 0.0;
    double sigma2 = 1.0;

    void validate() const
    {
        for (double v : {h11, h12, h21, h22, g1, g2, P1, P2, Lambda, sigma2})
            if (!std::isfinite(v))
                throw std::invalid_argument("ChannelConfig: non-finite field");
        if (!(P1 > 0.0) || !(P2 > 0.0))
            throw std::invalid_argument("ChannelConfig: P1 and P2 must be positive");
        if (Lambda < 0.0)
            throw std::invalid_argument("ChannelConfig: Lambda must be nonnegative");
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("ChannelConfig: sigma2 must be positive");
    }

    // Gain from transmitter `tx` to receiver `rx`, both 1-based.
    double gain(int rx, int tx) const
    {
        if (rx == 1)
            return tx == 1 ? h11 : h12;
        return tx == 1 ? h21 : h22;
    }
    double jammer_gain(int rx) const { return rx == 1 ? g1 : g2; }
    double power(int tx) const { return tx == 1 ? P1 : P2; }
};

/// Received power ratios normalized by the noise variance.
/// S_i: signal, I_i: interference seen at receiver i, J_i: jammer at receiver i.
struct NormalizedParams
{
    double S1 = 0.0, S2 = 0.0;
    double I1 = 0.0, I2 = 0.0;
    double J1 = 0.0, J2 = 0.0;

    static NormalizedParams symmetric(double S, double I, double J) { return {S, S, I, I, J, J}; }

    void validate() const
    {
        for (double v : {S1, S2, I1, I2, J1, J2})
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("NormalizedParams: ratios must be finite and >= 0");
    }

    double S(int i) const { return i == 1 ? S1 : S2; }
    double I(int i) const { return i == 1 ? I1 : I2; }
    double J(int i) const { return i == 1 ? J1 : J2; }

    // Jammer power folded into the noise floor.
    double S_primed(int i) const { return S(i) / (1.0 + J(i)); }
    double I_primed(int i) const { return I(i) / (1.0 + J(i)); }

    /// Same (S', I') with the jammers removed.
    NormalizedParams primed() const
    {
        return {S_primed(1), S_primed(2), I_primed(1), I_primed(2), 0.0, 0.0};
    }

    /// The capacity region is empty when S_i <= J_i on either side.
    bool jammer_dominates() const { return S1 <= J1 || S2 <= J2; }

    bool operator==(const NormalizedParams&) const = default;
};

inline NormalizedParams normalize(const ChannelConfig& cfg)
{
    cfg.validate();
    const double s2 = cfg.sigma2;
    return {
        cfg.h11 * cfg.h11 * cfg.P1 / s2,
        cfg.h22 * cfg.h22 * cfg.P2 / s2,
        cfg.h12 * cfg.h12 * cfg.P2 / s2,
        cfg.h21 * cfg.h21 * cfg.P1 / s2,
        cfg.g1 * cfg.g1 * cfg.Lambda / s2,
        cfg.g2 * cfg.g2 * cfg.Lambda / s2,
    };
}

/// A channel realizing the normalized parameters with unit powers and noise.
inline ChannelConfig channel_for(const NormalizedParams& p)
{
    ChannelConfig c;
    c.h11 = std::sqrt(p.S1);
    c.h22 = std::sqrt(p.S2);
    c.h12 = std::sqrt(p.I1);
    c.h21 = std::sqrt(p.I2);
    c.Lambda = 1.0;
    c.g1 = std::sqrt(p.J1);
    c.g2 = std::sqrt(p.J2);
    return c;
}

/// Gains of G jammers into the two receivers: rows[r][j] is the gain of
/// jammer j at receiver r.
struct CrossMatrix
{
    std::vector<double> row1;
    std::vector<double> row2;
    double Lambda = 0.0;
    double sigma2 = 1.0;

    std::size_t jammers() const { return row1.size(); }

    void validate() const
    {
        if (row1.empty() || row1.size() != row2.size())
            throw std::domain_error("CrossMatrix: need two rows of equal length G >= 1");
        for (double v : row1)
            if (!std::isfinite(v))
                throw std::domain_error("CrossMatrix: non-finite gain");
        for (double v : row2)
            if (!std::isfinite(v))
                throw std::domain_error("CrossMatrix: non-finite gain");
        if (!std::isfinite(Lambda) || Lambda < 0.0)
            throw std::domain_error("CrossMatrix: Lambda must be finite and nonnegative");
        if (!std::isfinite(sigma2) || !(sigma2 > 0.0))
            throw std::domain_error("CrossMatrix: sigma2 must be positive");
    }
};

/// Equivalent two-jammer gains |g_r| = sum_j |g_rj|.
inline std::pair<double, double> equivalent_jammer_gains(const CrossMatrix& m)
{
    m.validate();
    double a = 0.0, b = 0.0;
    for (double v : m.row1)
        a += std::abs(v);
    for (double v : m.row2)
        b += std::abs(v);
    return {a, b};
}

/// Jammer-to-noise ratios of the equivalent two-jammer channel. Only the J
/// fields of the result are populated.
///
/// Magnitudes are summed: with mixed-sign gains the jammers can still align
/// (w_j = sign(g_rj) w) at one receiver, so the signed sum would understate
/// the received jamming power.
inline NormalizedParams reduce_jammers(const CrossMatrix& m)
{
    const auto [a, b] = equivalent_jammer_gains(m);
    NormalizedParams p;
    p.J1 = a * a * m.Lambda / m.sigma2;
    p.J2 = b * b * m.Lambda / m.sigma2;
    return p;
}

/// J computed with the signed row sum. Kept for comparison only.
inline NormalizedParams reduce_jammers_signed(const CrossMatrix& m)
{
    m.validate();
    double a = 0.0, b = 0.0;
    for (double v : m.row1)
        a += v;
    for (double v : m.row2)
        b += v;
    NormalizedParams p;
    p.J1 = a * a * m.Lambda / m.sigma2;
    p.J2 = b * b * m.Lambda / m.sigma2;
    return p;
}

} // namespace gicjam
