#include <gicjam/dof.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace gicjam;

namespace {

// Classical jammer-free W curve.
double w_curve(double b)
{
    if (b <= 0.5)
        return 1.0 - b;
    if (b <= 2.0 / 3.0)
        return b;
    if (b <= 1.0)
        return 1.0 - b / 2.0;
    if (b <= 2.0)
        return b / 2.0;
    return 1.0;
}

} // namespace

TEST(DofClosedForm, Examples)
{
    EXPECT_DOUBLE_EQ(dof_closed_form(0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(dof_closed_form(1.0, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(dof_closed_form(0.7, 1.5), 0.0);
    EXPECT_NEAR(dof_closed_form(0.7, 0.25), 0.45, 1e-15);
}

TEST(DofClosedForm, WCurveAtZeroJamming)
{
    for (int k = 0; k <= 200; ++k) {
        const double b = k / 100.0;
        EXPECT_NEAR(dof_closed_form(b, 0.0), w_curve(b), 1e-15) << b;
    }
}

TEST(DofClosedForm, MonotoneAndBounded)
{
    for (int u = 0; u <= 40; ++u)
        for (int v = 0; v < 40; ++v) {
            const double b = u / 20.0, d = v / 20.0;
            const double x = dof_closed_form(b, d);
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
            EXPECT_LE(dof_closed_form(b, d + 0.05), x + 1e-15);
        }
}

TEST(DofNumeric, SandwichAndOrdering)
{
    const auto s = dof_numeric(0.7, 0.25, default_S_ladder(), 1e-3);
    ASSERT_EQ(s.size(), 5u);
    for (const auto& x : s) {
        EXPECT_LE(x.lower, x.upper + 1e-12);
        EXPECT_GE(x.lower, 0.0);
    }
}

TEST(DofNumeric, LargeScaleNearClosedForm)
{
    for (auto [b, d] : {std::pair{1.0, 0.0}, std::pair{0.7, 0.25}}) {
        const auto s = dof_numeric(b, d, {1e6}, 1e-3).front();
        const double want = dof_closed_form(b, d);
        EXPECT_NEAR(s.lower, want, 0.05) << b << ' ' << d;
        EXPECT_NEAR(s.upper, want, 0.05) << b << ' ' << d;
    }
}

TEST(SuboptimalAlpha, FeasibleAtLargeScale)
{
    EXPECT_TRUE(suboptimal_alpha_feasible_at_scale(0.7, 0.25, 1e4));
    const double t = suboptimal_alpha_threshold(0.7, 0.25, default_S_ladder());
    EXPECT_GT(t, 0.0);
    EXPECT_LE(t, 1e4);
    EXPECT_EQ(suboptimal_alpha_threshold(0.5, 1.5, default_S_ladder()), -1.0);
}
