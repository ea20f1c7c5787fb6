#include <gicjam/ratesplit.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gicjam;

namespace {

std::mt19937_64& rng()
{
    static std::mt19937_64 r(4417);
    return r;
}

double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// Receiver-i bound on R_i that the projection carries and the fixed-alpha
// region does not: R_i < C(alpha_i S_i/d_i) + C((alpha_j S_j + (1-alpha_i) I_j)/d_j).
double private_plus_cross(const NormalizedParams& p, const AlphaPair& a, int i)
{
    const int j = 3 - i;
    const double Si = p.S_primed(i), Sj = p.S_primed(j), Ij = p.I_primed(j), Ii = p.I_primed(i);
    const double di = 1.0 + a.alpha(j) * Ii, dj = 1.0 + a.alpha(i) * Ij;
    return capacity_fn(a.alpha(i) * Si / di) + capacity_fn((a.alpha(j) * Sj + (1.0 - a.alpha(i)) * Ij) / dj);
}

} // namespace

TEST(SplitSystem, FrozenBounds)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    const auto rows = split_system(p, {0.5, 0.5});
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_NEAR(rows[0].bound, 0.326038, 1e-6);
    EXPECT_NEAR(rows[1].bound, 0.549768, 1e-6);
    EXPECT_NEAR(rows[2].bound, 0.5, 1e-6);
    EXPECT_NEAR(rows[3].bound, 0.681285, 1e-6);
    for (int k = 0; k < 4; ++k)
        EXPECT_DOUBLE_EQ(rows[std::size_t(k)].bound, rows[std::size_t(k + 4)].bound);
    for (const auto& r : rows)
        EXPECT_DOUBLE_EQ(r.bound, capacity_fn(r.snr));
}

TEST(SplitSystem, FrozenFeasibleSplit)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    const double x = 0.05, y = (0.681285 - 1e-6 - x) / 2.0;
    EXPECT_NEAR(y, 0.315642, 1e-6);
    EXPECT_TRUE(split_feasible(p, {0.5, 0.5}, {y, x, y, x}));
    EXPECT_FALSE(split_feasible(p, {0.5, 0.5}, {y + 1e-3, x, y, x}));
}

TEST(SplitSystem, ZeroRatesAndPreconditions)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    EXPECT_TRUE(split_feasible(p, {0.5, 0.5}, {}));
    EXPECT_FALSE(split_feasible(NormalizedParams::symmetric(4.0, 3.0, 4.0), {0.5, 0.5}, {}));
    EXPECT_FALSE(split_feasible(NormalizedParams::symmetric(4.0, 3.0, 3.5), {0.5, 0.5}, {}));
    EXPECT_FALSE(split_feasible(p, {0.5, 0.5}, {-0.01, 0.0, 0.0, 0.0}));
}

TEST(SplitSystem, BackoffShrinksBounds)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    const auto a = split_system(p, {0.3, 0.6});
    const auto b = split_system(p, {0.3, 0.6}, 0.15);
    for (std::size_t k = 0; k < a.size(); ++k)
        EXPECT_LT(b[k].bound, a[k].bound);
}

TEST(FmeProject, AlphaOneThreshold)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    const auto r = fme_project(p, {1.0, 1.0});
    const double t = capacity_fn(4.0 / (1.0 + 1.0 + 3.0));
    EXPECT_EQ(r.membership(t, t), Membership::boundary);
    EXPECT_EQ(r.membership(t - 1e-6, t - 1e-6), Membership::inside);
    EXPECT_EQ(r.membership(t + 1e-6, 0.0), Membership::outside);
}

TEST(FmeProject, DegenerateZeroSnr)
{
    const auto r = fme_project(NormalizedParams{1e-300, 1e-300, 0.0, 0.0, 0.0, 0.0}, {1.0, 1.0});
    ASSERT_FALSE(r.empty);
    EXPECT_EQ(r.membership(0.0, 0.0), Membership::boundary);
    EXPECT_EQ(r.membership(1e-6, 0.0), Membership::outside);
}

TEST(FmeProject, EmptyWithoutFeasibleAlpha)
{
    EXPECT_TRUE(fme_project(NormalizedParams::symmetric(4.0, 3.0, 3.5), {0.5, 0.5}).empty);
    EXPECT_TRUE(fme_project(NormalizedParams::symmetric(4.0, 3.0, 5.0), {1.0, 1.0}).empty);
}

TEST(FmeProject, SoundByWitness)
{
    // Every point well inside the projection has a split with positive slack.
    for (int k = 0; k < 40; ++k) {
        const NormalizedParams p{uni(0.5, 30.0), uni(0.5, 30.0), uni(0.0, 30.0), uni(0.0, 30.0), 0.0, 0.0};
        const AlphaPair a{uni(0.0, 1.0), uni(0.0, 1.0)};
        const auto r = fme_project(p, a);
        for (int t = 0; t < 30; ++t) {
            const double R1 = uni(0.0, 3.0), R2 = uni(0.0, 3.0);
            if (r.min_slack(R1, R2) < 2e-2)
                continue;
            const auto s = choose_split(p, a, R1, R2, 200);
            EXPECT_GT(s.min_slack, 0.0) << k << ' ' << R1 << ' ' << R2;
        }
    }
}

TEST(FmeProject, InsideFixedAlphaRegion)
{
    for (int k = 0; k < 200; ++k) {
        const NormalizedParams p{uni(0.1, 50.0), uni(0.1, 50.0), uni(0.0, 50.0), uni(0.0, 50.0), 0.0, 0.0};
        const AlphaPair a{uni(0.0, 1.0), uni(0.0, 1.0)};
        const auto hk = hk_region(p, a);
        for (const auto& v : vertices(fme_project(p, a)))
            EXPECT_GE(hk.min_slack(v.R1, v.R2), -1e-9);
    }
}

TEST(FmeProject, EqualsHkWithPrivateCrossBound)
{
    // The projection is the fixed-alpha region cut by R_i below
    // private_plus_cross. The cut is what separates the two.
    for (int k = 0; k < 50; ++k) {
        const NormalizedParams p{uni(0.1, 50.0), uni(0.1, 50.0), uni(0.0, 50.0), uni(0.0, 50.0), 0.0, 0.0};
        const AlphaPair a{uni(0.0, 1.0), uni(0.0, 1.0)};
        auto cut = hk_region(p, a);
        cut.halfspaces.push_back({1, 0, private_plus_cross(p, a, 1)});
        cut.halfspaces.push_back({0, 1, private_plus_cross(p, a, 2)});
        const auto fme = fme_project(p, a);
        for (int u = 0; u < 100; ++u)
            for (int v = 0; v < 100; ++v) {
                const double R1 = 4.0 * u / 99.0, R2 = 4.0 * v / 99.0;
                if (std::abs(cut.min_slack(R1, R2)) < 1e-3 || std::abs(fme.min_slack(R1, R2)) < 1e-3)
                    continue;
                EXPECT_EQ(fme.contains(R1, R2), cut.contains(R1, R2)) << k << ' ' << R1 << ' ' << R2;
            }
    }
}

TEST(FmeProject, StrictlySmallerThanHkForSomeAlpha)
{
    // Jammer-free S=10, I=1, alpha=0: the private-plus-cross cut binds on the axis.
    const auto p = NormalizedParams::symmetric(10.0, 1.0, 0.0);
    const AlphaPair a{0.0, 0.0};
    const auto hk = hk_region(p, a);
    const auto fme = fme_project(p, a);
    const double cap = private_plus_cross(p, a, 1);
    EXPECT_LT(cap, capacity_fn(10.0));
    EXPECT_TRUE(hk.contains(cap + 0.05, 0.0));
    EXPECT_FALSE(fme.contains(cap + 0.05, 0.0));
}

TEST(ChooseSplit, NormalizedFavorsWideRows)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    const AlphaPair a{0.5, 0.5};
    const auto s = choose_split(p, a, 0.25, 0.25, 200, 0.0, SplitObjective::slack);
    const auto n = choose_split(p, a, 0.25, 0.25, 200, 0.0, SplitObjective::normalized);
    EXPECT_GT(s.min_slack, 0.0);
    EXPECT_GT(n.min_slack, 0.0);
    EXPECT_GE(s.min_slack, n.min_slack - 1e-12);
    EXPECT_NEAR(s.rates.R1(), 0.25, 1e-12);
    EXPECT_NEAR(n.rates.R2(), 0.25, 1e-12);
}

TEST(ChooseSplit, NegativeScoreWhenInfeasible)
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    EXPECT_LT(choose_split(p, {0.5, 0.5}, 0.6, 0.6).score, 0.0);
}

TEST(Dispersion, KnownValues)
{
    EXPECT_EQ(gaussian_dispersion(0.0), 0.0);
    const double l2e = 1.0 / std::log(2.0);
    EXPECT_NEAR(gaussian_dispersion(1.0), 3.0 / 8.0 * l2e * l2e, 1e-15);
    EXPECT_NEAR(gaussian_dispersion(1e9), 0.5 * l2e * l2e, 1e-9);
}
