#pragma once

// Empirical check of the single-codebook Gaussian packing property.
//
// N = 2^{nR} messages, K codebooks of unit-variance Gaussian codewords, noise
// V ~ N(0, sigma2 I). For a jamming vector w with ||w||^2 <= n Lambda, p2(w)
// is the probability, averaged over messages and codebooks, that a typical
// codeword x_j (j != i) lies at least as close to x_i + w + V as x_i does.
//
// Codebooks are not materialized. Per trial the true codeword and noise are
// drawn, and the N - 1 competitors (independent of w unless the jammer copies
// one of them) enter through the noncentral chi-square tail. This conditional
// expectation has the same mean as the brute-force count with far less
// variance. The sup over w is replaced by a fixed menu; p2 is the largest
// menu average.

#include "codebook.hpp"
#include "rng.hpp"
#include "tail.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gicjam::sim {

enum class LemmaProbe { none, gaussian, boundary_axis, boundary_flat, scaled_codeword };

inline std::string to_string(LemmaProbe p)
{
    switch (p) {
    case LemmaProbe::none:
        return "none";
    case LemmaProbe::gaussian:
        return "gaussian";
    case LemmaProbe::boundary_axis:
        return "boundary_axis";
    case LemmaProbe::boundary_flat:
        return "boundary_flat";
    case LemmaProbe::scaled_codeword:
        return "scaled_codeword";
    }
    return "?";
}

inline constexpr std::array<LemmaProbe, 5> kLemmaProbes{LemmaProbe::none, LemmaProbe::gaussian,
                                                        LemmaProbe::boundary_axis, LemmaProbe::boundary_flat,
                                                        LemmaProbe::scaled_codeword};

struct LemmaConfig
{
    double R = 0.1;
    double Lambda = 0.5;
    double sigma2 = 1.0;
    int n = 64;
    double K = 0.0; // number of codebooks; 0 means n^2
    int trials = 500;
    double epsilon = 0.25;
    std::uint64_t seed = 1;
};

struct LemmaEstimate
{
    double p2 = 0.0;                         // max over the menu
    LemmaProbe worst = LemmaProbe::none;
    std::array<double, 5> per_probe{};       // menu averages, in kLemmaProbes order
    std::array<double, 5> per_probe_stderr{};
};

namespace detail {

// Probability that one of `count` fresh codewords is at least as close; the
// competitor typicality condition is dropped, which can only raise it. The
// truth x sits at offset z = w + V from the received vector.
inline double packing_miss(double count, const std::vector<double>& x, const std::vector<double>& z, int n)
{
    double t2 = 0.0, z2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        t2 += (x[k] + z[k]) * (x[k] + z[k]);
        z2 += z[k] * z[k];
    }
    return prob_any(count, log_ncx2_cdf(z2, double(n), t2));
}

} // namespace detail

inline LemmaEstimate lemma1_spotcheck(const LemmaConfig& c)
{
    const int n = c.n;
    const double N = std::max(1.0, std::floor(std::exp2(n * c.R) + 1e-9));
    const double K = c.K > 0.0 ? c.K : double(n) * n;
    const double radius = std::sqrt(n * c.Lambda);
    auto typical = [&](const std::vector<double>& v) { return std::abs(dot(v, v) / n - 1.0) <= c.epsilon; };

    std::array<double, 5> sum{}, sum2{};
    for (int t = 0; t < c.trials; ++t) {
        auto rng = substream(c.seed, 7, std::uint64_t(t));
        const auto len = static_cast<std::size_t>(n);
        std::vector<double> x(len), v(len), g(len), d(len), xj(len);
        fill_gaussian(rng, x, 1.0);
        fill_gaussian(rng, v, c.sigma2);
        fill_gaussian(rng, g, c.Lambda);
        fill_gaussian(rng, d, 1.0);
        fill_gaussian(rng, xj, 1.0);
        const bool xi_typical = typical(x);

        // rescaled onto the sphere of radius sqrt(n Lambda)
        auto to_sphere = [&](std::vector<double> w) {
            const double e = std::sqrt(dot(w, w));
            for (double& u : w)
                u *= e > 0.0 ? radius / e : 0.0;
            return w;
        };
        auto offset = [&](const std::vector<double>& w) {
            std::vector<double> z(v);
            for (std::size_t k = 0; k < z.size(); ++k)
                z[k] += w[k];
            return z;
        };

        for (std::size_t p = 0; p < kLemmaProbes.size(); ++p) {
            double miss = 0.0;
            if (xi_typical) {
                std::vector<double> w(len, 0.0);
                switch (kLemmaProbes[p]) {
                case LemmaProbe::none:
                    break;
                case LemmaProbe::gaussian:
                    w = g;
                    if (dot(w, w) > radius * radius)
                        w = to_sphere(w);
                    break;
                case LemmaProbe::boundary_axis:
                    w[0] = radius;
                    break;
                case LemmaProbe::boundary_flat:
                    std::ranges::fill(w, std::sqrt(c.Lambda));
                    break;
                case LemmaProbe::scaled_codeword: {
                    // The jammer forges codeword j0 of one of the K codebooks;
                    // it matches the codebook in use with probability 1/K.
                    // Otherwise it is a direction independent of the codebook.
                    const auto z_miss = offset(to_sphere(d));
                    const double p_indep = detail::packing_miss(N - 1.0, x, z_miss, n);

                    const auto wj = to_sphere(xj);
                    const auto z_hit = offset(wj);
                    double hit = 0.0;
                    if (N > 1.0) {
                        double dj = 0.0, d0 = 0.0;
                        for (std::size_t k = 0; k < x.size(); ++k) {
                            const double e = x[k] + z_hit[k] - xj[k];
                            dj += e * e;
                            d0 += z_hit[k] * z_hit[k];
                        }
                        const double others = detail::packing_miss(N - 2.0, x, z_hit, n);
                        hit = typical(xj) && dj <= d0 ? 1.0 : others;
                    }
                    miss = p_indep * (1.0 - 1.0 / K) + hit / K;
                    break;
                }
                }
                if (kLemmaProbes[p] != LemmaProbe::scaled_codeword)
                    miss = detail::packing_miss(N - 1.0, x, offset(w), n);
            }
            sum[p] += miss;
            sum2[p] += miss * miss;
        }
    }

    LemmaEstimate est;
    const double T = c.trials;
    for (std::size_t p = 0; p < kLemmaProbes.size(); ++p) {
        const double mean = sum[p] / T;
        est.per_probe[p] = mean;
        est.per_probe_stderr[p] = T > 1 ? std::sqrt(std::max(0.0, sum2[p] / T - mean * mean) / (T - 1.0)) : 0.0;
        if (p == 0 || mean > est.p2) {
            est.p2 = mean;
            est.worst = kLemmaProbes[p];
        }
    }
    return est;
}

} // namespace gicjam::sim
