// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <gicjam/gicjam.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gicjam;
using namespace gicjam::sim;

namespace {

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::mt19937_64 rng(20261017);
double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

// 1. Jammer at or above signal power.
Verdict emptiness()
{
    int nonempty = 0;
    for (int k = 0; k < 100; ++k) {
        NormalizedParams p{uni(0.1, 20), uni(0.1, 20), uni(0, 20), uni(0, 20), 0, 0};
        const int side = k % 3; // receiver 1, receiver 2, both
        p.J1 = side != 1 ? p.S1 * uni(1.0, 3.0) : uni(0.0, p.S1);
        p.J2 = side != 0 ? p.S2 * uni(1.0, 3.0) : uni(0.0, p.S2);
        if (k % 10 == 0)
            p.J1 = p.S1; // boundary case S = J
        if (!outer_region(p).empty || !tilde_inner_region(p).empty())
            ++nonempty;
    }

    std::string rates;
    double worst = 1.0;
    for (double R1p : {0.01, 0.02, 0.04}) {
        SimConfig sc;
        sc.cfg = channel_for(NormalizedParams{4, 4, 1, 1, 4, 4});
        sc.n = 256;
        sc.alpha = {1.0, 1.0};
        sc.rates = {0.0, R1p, 0.0, 0.01};
        sc.trials = 10000;
        sc.seed = 1;
        const auto r = run_trials(sc, JammerStrategy::symmetrizer(), JammerStrategy::gaussian());
        const double e = r.stats.receiver(1).rate;
        worst = std::min(worst, e);
        rates += fmt(" R1=%.2f:%.3f", R1p, e);
    }
    return {nonempty == 0 && worst >= 0.25,
            fmt("%d/100 nonempty regions; symmetrize error at J=S, n=256, 1e4 trials:", nonempty) + rates};
}

// 2. Largest J with tilde symcap equal to the unconstrained one, S=4, I=3.
Verdict j_threshold()
{
    double last = -1.0;
    for (int k = 0; k <= 4000; ++k) {
        const double J = k * 1e-3;
        const auto b = symcap_bounds(4.0, 3.0, J, 1e-3);
        if (b.hk > 0.0 && std::abs(b.lower - b.hk) < 1e-6)
            last = J;
    }
    return {std::abs(last - 3.2) <= 0.2, fmt("largest J with equal bounds = %.3f (target 3.2 +/- 0.2)", last)};
}

// 3. Weak and strong regimes at S=4, J=3.5.
Verdict regimes()
{
    int weak = 0, strong = 0, bad = 0;
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double I = k * 0.01;
        const auto p = NormalizedParams::symmetric(4.0, I, 3.5);
        const auto reg = regime_classify(p);
        const bool checked = reg == Regime::weak || I >= 4.0;
        if (!checked)
            continue;
        (reg == Regime::weak ? weak : strong) += 1;
        const auto b = symcap_bounds(4.0, I, 3.5, 1e-3);
        const double d = std::abs(b.lower - b.hk);
        worst = std::max(worst, d);
        if (d >= 1e-6)
            ++bad;
    }
    return {bad == 0 && weak > 0 && strong > 0,
            fmt("%d weak and %d strong grid points, %d mismatches, max |diff| = %.2e", weak, strong, bad, worst)};
}

// 4. Half-bit gap where the certificate holds.
Verdict halfbit()
{
    int n = 0, tries = 0;
    double worst = -1.0;
    while (n < 200 && tries < 100000) {
        ++tries;
        const double S = std::exp(uni(-1.0, 9.0)), I = std::exp(uni(-3.0, 9.0)), J = uni(0.0, S);
        if (!halfbit_certificate(NormalizedParams::symmetric(S, I, J)))
            continue;
        ++n;
        const auto b = symcap_bounds(S, I, J);
        worst = std::max(worst, b.upper - b.lower);
    }
    return {n == 200 && worst <= 0.51, fmt("%d certified draws, max gap %.4f bits (limit 0.51)", n, worst)};
}

// 5. Fixed-alpha region inside the outer bound.
Verdict inclusion()
{
    int n = 0, bad = 0;
    double worst = 1e300;
    while (n < 500) {
        const double S1 = std::exp(uni(-1.0, 6.0)), S2 = std::exp(uni(-1.0, 6.0));
        const NormalizedParams p{S1, S2, std::exp(uni(-3.0, 6.0)), std::exp(uni(-3.0, 6.0)), uni(0.0, S1), uni(0.0, S2)};
        const AlphaPair a{uni(0.0, 1.0), uni(0.0, 1.0)};
        if (!alpha_feasible(p, a))
            continue;
        ++n;
        const auto outer = outer_region(p);
        for (const auto& v : vertices(hk_region(p, a))) {
            const double s = outer.min_slack(v.R1, v.R2);
            worst = std::min(worst, s);
            bad += s < -1e-9 ? 1 : 0;
        }
    }
    return {bad == 0, fmt("%d draws, %d vertices outside, min slack %.3e", n, bad, worst)};
}

// 6. Projection of the split system against the fixed-alpha region.
Verdict fme_equivalence()
{
    long mismatches = 0;
    int configs_with_mismatch = 0;
    double largest_gap = 0.0;
    for (int k = 0; k < 50; ++k) {
        const NormalizedParams p{uni(0.1, 50), uni(0.1, 50), uni(0, 50), uni(0, 50), 0, 0};
        const AlphaPair a{uni(0, 1), uni(0, 1)};
        const auto hk = hk_region(p, a);
        const auto fme = fme_project(p, a);
        const double top = 1.1 * std::max(capacity_fn(p.S1), capacity_fn(p.S2));
        long here = 0;
        for (int u = 0; u < 100; ++u)
            for (int v = 0; v < 100; ++v) {
                const double R1 = top * u / 99.0, R2 = top * v / 99.0;
                const double sh = hk.min_slack(R1, R2), sf = fme.min_slack(R1, R2);
                if (std::abs(sh) < 1e-3 || std::abs(sf) < 1e-3)
                    continue;
                if ((sh > 0) != (sf > 0)) {
                    ++here;
                    largest_gap = std::max(largest_gap, std::abs(sh - sf));
                }
            }
        mismatches += here;
        configs_with_mismatch += here ? 1 : 0;
    }
    return {mismatches == 0, fmt("%ld mismatching grid points in %d/50 configs (largest slack gap %.3f bits)",
                                 mismatches, configs_with_mismatch, largest_gap)};
}

// 7. Degrees of freedom.
Verdict dof()
{
    auto w = [](double b) {
        if (b <= 0.5)
            return 1.0 - b;
        if (b <= 2.0 / 3.0)
            return b;
        if (b <= 1.0)
            return 1.0 - b / 2.0;
        return std::min(1.0, b / 2.0);
    };
    double wdiff = 0.0;
    for (int k = 0; k <= 200; ++k)
        wdiff = std::max(wdiff, std::abs(dof_closed_form(k / 100.0, 0.0) - w(k / 100.0)));

    int total = 0, within = 0, bracketed = 0;
    double worst = 0.0, wb = 0.0, wd = 0.0;
    for (int u = 0; u <= 20; ++u)
        for (int v = 0; v <= 9; ++v) {
            const double b = u / 10.0, d = v / 10.0;
            const auto s = dof_numeric(b, d, {1e6}, 1e-3).front();
            const double c = dof_closed_form(b, d);
            const double e = std::max(std::abs(s.lower - c), std::abs(s.upper - c));
            ++total;
            within += e <= 0.05 ? 1 : 0;
            bracketed += (s.lower - 0.05 <= c && c <= s.upper + 0.05) ? 1 : 0;
            if (e > worst) {
                worst = e;
                wb = b;
                wd = d;
            }
        }
    return {wdiff <= 1e-12 && within == total,
            fmt("W curve max diff %.1e; at S=1e6 %d/%d points have both bounds within 0.05 "
                "(worst %.3f at beta=%.1f delta=%.1f); %d/%d bracket with 0.05 slack",
                wdiff, within, total, worst, wb, wd, bracketed, total)};
}

// 8. Desk-scale achievability.
Verdict desk()
{
    const auto p = NormalizedParams::symmetric(4.0, 3.0, 1.0);
    SimConfig sc;
    sc.cfg = channel_for(p);
    sc.n = 512;
    sc.trials = 2000;
    sc.seed = 7;
    sc.mode = SimMode::ensemble;
    auto run_at = [&](double scale, RateReference ref) {
        const auto op = symmetric_operating_point(p, scale, ref, sc.gamma);
        sc.rates = op.rates;
        sc.alpha = op.alpha;
        return run_trials(sc, JammerStrategy::gaussian(), JammerStrategy::gaussian()).stats;
    };
    const auto lo = run_at(0.8, RateReference::inner);
    const auto hi = run_at(1.3, RateReference::outer);
    return {lo.block_rate < 0.1 && hi.block_rate > 0.3,
            fmt("block error %.4f [%.4f, %.4f] at 0.8x inner, %.4f at 1.3x outer (n=512, 2000 trials)",
                lo.block_rate, lo.block_ci.low, lo.block_ci.high, hi.block_rate)};
}

// 9. Packing trend.
Verdict lemma()
{
    const double cap = capacity_fn(1.0 / 1.5);
    LemmaConfig lc;
    lc.trials = 500;
    std::vector<double> below, above;
    for (int n : {64, 128, 256}) {
        lc.n = n;
        lc.R = 0.5 * cap;
        below.push_back(lemma1_spotcheck(lc).p2);
        lc.R = 1.5 * cap;
        above.push_back(lemma1_spotcheck(lc).p2);
    }
    const bool dec = below[0] > below[1] && below[1] > below[2];
    const bool high = *std::ranges::min_element(above) > 0.2;
    return {dec && high, fmt("p2 at 0.5C: %.3g %.3g %.3g; at 1.5C: %.3f %.3f %.3f", below[0], below[1], below[2],
                             above[0], above[1], above[2])};
}

// 10. CLI determinism.
Verdict determinism()
{
    const std::string bin = GICJAM_CLI_PATH, dir = GICJAM_CONFIG_DIR;
    const std::vector<std::string> commands{
        "region -c " + dir + "/region_S4_I3_J2.json",
        "region -c " + dir + "/region_empty.json",
        "symcap -c " + dir + "/symcap_sweep_J.json",
        "symcap -c " + dir + "/symcap_sweep_I.json",
        "symcap -c " + dir + "/symcap_sweep_S.json",
        "dof -c " + dir + "/dof_sweep_beta.json",
        "dof -c " + dir + "/dof_sweep_delta.json",
        "reduce -c " + dir + "/reduce_ones.json",
        "simulate -c " + dir + "/simulate_desk.json --trials 300",
        "simulate -c " + dir + "/simulate_symmetrize.json --trials 300",
    };
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::string tmp = "gicjam_acceptance_";
    int same = 0;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::string outs[2];
        for (int rep = 0; rep < 2; ++rep) {
            const std::string out = tmp + std::to_string(k) + "_" + std::to_string(rep);
            const std::string cmd = bin + " " + commands[k] + " -o " + out + " --log " + out + ".log";
            if (std::system(cmd.c_str()) != 0)
                break;
            outs[rep] = slurp(out) + slurp(out + ".log");
            std::remove(out.c_str());
            std::remove((out + ".log").c_str());
        }
        same += (!outs[0].empty() && outs[0] == outs[1]) ? 1 : 0;
    }
    return {same == int(commands.size()), fmt("%d/%zu commands byte-identical on rerun", same, commands.size())};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"jammer-dominated emptiness and symmetrize attack", emptiness},
        {"symmetric-capacity threshold in J (S=4, I=3)", j_threshold},
        {"weak/strong regime agreement (S=4, J=3.5)", regimes},
        {"half-bit gap", halfbit},
        {"fixed-alpha region inside outer bound", inclusion},
        {"projection equals fixed-alpha region (J=0)", fme_equivalence},
        {"degrees of freedom", dof},
        {"desk-scale achievability", desk},
        {"packing trend", lemma},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto v = criteria[k].second();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu %s: %s; %s [%.1fs]\n", k + 1, v.pass ? "PASS" : "FAIL", criteria[k].first,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
