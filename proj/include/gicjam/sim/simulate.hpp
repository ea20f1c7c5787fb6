#pragma once

// Monte-Carlo trials of the rate-split scheme against a pair of jammers.
//
// exhaustive mode materializes the four codebooks and runs the full
// minimum-distance decoder. ensemble mode averages over the random code
// instead: the transmitted codewords are drawn per trial, and for each
// competitor class the probability that some independent codeword of the
// class lands at least as close as the truth follows from the noncentral
// chi-square left tail. This reaches blocklengths where enumeration is
// impossible (n R of several hundred bits). Competitors are not filtered by
// typicality in ensemble mode, which can only overstate the error.

#include "../parallel.hpp"
#include "codebook.hpp"
#include "decoder.hpp"
#include "jammer.hpp"
#include "rng.hpp"
#include "tail.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gicjam::sim {

struct MessageTuple
{
    Message m1, m2;
    const Message& user(int i) const { return i == 1 ? m1 : m2; }
    bool operator==(const MessageTuple&) const = default;
};

struct ReceiverOutcome
{
    std::optional<Message> decoded; // nullopt: decode failure
    std::uint8_t events = 0;        // ErrorEvent flags; empty iff decoded correctly
    bool error() const { return events != 0; }
    bool operator==(const ReceiverOutcome&) const = default;
};

struct TrialOutcome
{
    std::size_t index = 0;
    MessageTuple sent;
    std::array<ReceiverOutcome, 2> rx;
    std::array<std::optional<Message>, 2> counterfeit; // symmetrize: message forged at receiver r
    std::array<bool, 2> encoder_fallback{};            // transmitter sent the zero vector

    const ReceiverOutcome& receiver(int r) const { return rx[std::size_t(r - 1)]; }
    bool operator==(const TrialOutcome&) const = default;
};

struct Interval
{
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval (95% by default).
inline Interval wilson(std::size_t k, std::size_t n, double z = 1.959963984540054)
{
    if (n == 0)
        return {0.0, 1.0};
    const double p = double(k) / double(n), nn = double(n), z2 = z * z;
    const double centre = (p + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct ReceiverStats
{
    std::size_t errors = 0;
    std::array<std::size_t, 5> events{}; // E0..E4 attribution counts
    double rate = 0.0;
    Interval ci;
};

struct ErrorStats
{
    std::size_t trials = 0;
    std::array<ReceiverStats, 2> rx;
    std::size_t block_errors = 0; // either receiver wrong
    double block_rate = 0.0;
    Interval block_ci;
    std::size_t encoder_fallbacks = 0;

    const ReceiverStats& receiver(int r) const { return rx[std::size_t(r - 1)]; }
};

inline ErrorStats summarize(const std::vector<TrialOutcome>& outcomes)
{
    ErrorStats s;
    s.trials = outcomes.size();
    for (const auto& t : outcomes) {
        bool any = false;
        for (std::size_t r = 0; r < 2; ++r) {
            const auto& o = t.rx[r];
            if (o.error()) {
                ++s.rx[r].errors;
                any = true;
            }
            for (std::size_t e = 0; e < 5; ++e)
                if (o.events & (1u << e))
                    ++s.rx[r].events[e];
            s.encoder_fallbacks += t.encoder_fallback[r] ? 1 : 0;
        }
        s.block_errors += any ? 1 : 0;
    }
    for (auto& r : s.rx) {
        r.rate = s.trials ? double(r.errors) / double(s.trials) : 0.0;
        r.ci = wilson(r.errors, s.trials);
    }
    s.block_rate = s.trials ? double(s.block_errors) / double(s.trials) : 0.0;
    s.block_ci = wilson(s.block_errors, s.trials);
    return s;
}

struct RunResult
{
    std::vector<TrialOutcome> outcomes;
    ErrorStats stats;
};

namespace detail {

inline constexpr std::uint64_t kTrialStream = 1;

inline void check_power(std::span<const double> v, double limit, const char* what)
{
    if (norm2(v) > double(v.size()) * limit * (1.0 + 1e-12) + 1e-12)
        throw std::logic_error(std::string("power discipline violated: ") + what);
}

inline Message draw_message(Rng& rng, std::size_t nc, std::size_t np)
{
    const auto c = std::size_t(uniform_index(rng, nc));
    const auto p = std::size_t(uniform_index(rng, np));
    return {c, p};
}

// y_r = h_r1 x1 + h_r2 x2 + g_r w + v
inline std::vector<double> channel_output(const ChannelConfig& cfg, int r, std::span<const double> x1,
                                          std::span<const double> x2, std::span<const double> w, Rng& rng)
{
    std::vector<double> y(x1.size());
    fill_gaussian(rng, y, cfg.sigma2);
    const double a = cfg.gain(r, 1), b = cfg.gain(r, 2), g = cfg.jammer_gain(r);
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] += a * x1[k] + b * x2[k] + g * w[k];
    return y;
}

// A message other than `m` differing in the components named by `event`.
inline Message wrong_message(const Message& m, std::uint8_t event, std::size_t nc, std::size_t np)
{
    Message out = m;
    if (event & (E2 | E4))
        out.common = (m.common + 1) % std::max<std::size_t>(nc, 1);
    else
        out.priv = (m.priv + 1) % std::max<std::size_t>(np, 1);
    return out;
}

} // namespace detail

/// Exhaustive-mode trials over materialized codebooks.
inline RunResult run_exhaustive(const SimConfig& sc, const JammerStrategy& s1, const JammerStrategy& s2,
                                unsigned threads = 0)
{
    const auto cb = build_codebooks(sc);
    const std::array<const JammerStrategy*, 2> strat{&s1, &s2};
    for (const auto* s : strat)
        s->power_used(sc.cfg);
    const Decoder dec1(cb, sc.cfg, 1, sc.epsilon), dec2(cb, sc.cfg, 2, sc.epsilon);
    const std::array<const Decoder*, 2> dec{&dec1, &dec2};

    RunResult res;
    res.outcomes.resize(std::size_t(sc.trials));
    parallel_for(
        res.outcomes.size(),
        [&](std::size_t t) {
            auto rng = substream(sc.seed, detail::kTrialStream, t);
            TrialOutcome out;
            out.index = t;
            const auto& u1 = cb.user(1);
            const auto& u2 = cb.user(2);
            out.sent.m1 = detail::draw_message(rng, u1.common_count, u1.private_count);
            out.sent.m2 = detail::draw_message(rng, u2.common_count, u2.private_count);
            const auto x1 = encode(cb, 1, out.sent.m1, sc.cfg.P1);
            const auto x2 = encode(cb, 2, out.sent.m2, sc.cfg.P2);
            detail::check_power(x1, sc.cfg.P1, "transmitter 1");
            detail::check_power(x2, sc.cfg.P2, "transmitter 2");
            out.encoder_fallback = {norm2(x1) == 0.0 && sc.cfg.P1 > 0.0 && u1.common.variance + u1.priv.variance > 0.0,
                                    norm2(x2) == 0.0 && sc.cfg.P2 > 0.0 && u2.common.variance + u2.priv.variance > 0.0};

            for (int r = 1; r <= 2; ++r) {
                const auto& s = *strat[std::size_t(r - 1)];
                auto jo = jam(s, r, cb, sc.cfg, rng);
                detail::check_power(jo.w, s.power_used(sc.cfg), "jammer");
                if (s.kind == JammerKind::symmetrize && s.target(r) == r)
                    out.counterfeit[std::size_t(r - 1)] = jo.counterfeit;
                const auto y = detail::channel_output(sc.cfg, r, x1, x2, jo.w, rng);

                const Message& own = out.sent.user(r);
                const Triple truth{own.common, own.priv, out.sent.user(3 - r).common};
                const auto d = dec[std::size_t(r - 1)]->decode(y, truth);
                ReceiverOutcome ro;
                if (d.decoded)
                    ro.decoded = Message{d.decoded->own_common, d.decoded->own_private};
                ro.events = ro.decoded == own ? 0 : d.events;
                out.rx[std::size_t(r - 1)] = ro;
            }
            res.outcomes[t] = std::move(out);
        },
        threads);
    res.stats = summarize(res.outcomes);
    return res;
}

namespace detail {

struct TrialWords
{
    std::vector<double> c, p; // common and private codeword
};

inline TrialWords fresh_words(Rng& rng, int n, double vc, double vp)
{
    TrialWords w{std::vector<double>(std::size_t(n)), std::vector<double>(std::size_t(n))};
    fill_gaussian(rng, w.c, vc);
    fill_gaussian(rng, w.p, vp);
    return w;
}

inline CandidateMoments moments(std::span<const double> y, double a, double b, std::span<const double> xc,
                                std::span<const double> xp, std::span<const double> xo)
{
    std::vector<double> r(y.begin(), y.end());
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] -= a * (xc[k] + xp[k]) + b * xo[k];
    CandidateMoments m{};
    m.cc = norm2(xc);
    m.pp = norm2(xp);
    m.oo = norm2(xo);
    m.cp = dot(xc, xp);
    m.co = dot(xc, xo);
    m.po = dot(xp, xo);
    m.rc = dot(r, xc);
    m.rp = dot(r, xp);
    m.ro = dot(r, xo);
    m.rr = norm2(r);
    return m;
}

// log P(||t - X||^2 <= d0) for X ~ N(0, v I_n).
inline double log_closer(double t2, double d0, double v, int n)
{
    if (v <= 0.0)
        return t2 <= d0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return log_ncx2_cdf(d0 / v, double(n), t2 / v);
}

} // namespace detail

/// Ensemble-mode trials (random-coding average, no materialized books).
inline RunResult run_ensemble(const SimConfig& sc, const JammerStrategy& s1, const JammerStrategy& s2,
                              unsigned threads = 0)
{
    sc.validate();
    const std::array<const JammerStrategy*, 2> strat{&s1, &s2};
    for (const auto* s : strat)
        s->power_used(sc.cfg);
    const int n = sc.n;
    // Competitor class sizes are handled as logs; message indices saturate
    // for huge books (they only label outcomes).
    auto index_cap = [](double bits) { return bits > 60.0 ? std::size_t(1) << 60 : std::size_t(book_size(1, bits)); };
    const std::array<std::size_t, 2> Nci{index_cap(n * sc.rates.R1c), index_cap(n * sc.rates.R2c)};
    const std::array<std::size_t, 2> Npi{index_cap(n * sc.rates.R1p), index_cap(n * sc.rates.R2p)};
    const std::array<double, 2> logNc1{log_others(n, sc.rates.R1c), log_others(n, sc.rates.R2c)};
    const std::array<double, 2> logNp{log_book(n, sc.rates.R1p), log_book(n, sc.rates.R2p)};
    const std::array<double, 2> logNp1{log_others(n, sc.rates.R1p), log_others(n, sc.rates.R2p)};

    RunResult res;
    res.outcomes.resize(std::size_t(sc.trials));
    parallel_for(
        res.outcomes.size(),
        [&](std::size_t t) {
            auto rng = substream(sc.seed, detail::kTrialStream, t);
            TrialOutcome out;
            out.index = t;
            out.sent.m1 = detail::draw_message(rng, Nci[0], Npi[0]);
            out.sent.m2 = detail::draw_message(rng, Nci[1], Npi[1]);
            std::array<detail::TrialWords, 2> words{
                detail::fresh_words(rng, n, sc.common_variance(1), sc.private_variance(1)),
                detail::fresh_words(rng, n, sc.common_variance(2), sc.private_variance(2))};
            std::array<std::vector<double>, 2> x;
            for (int i = 1; i <= 2; ++i) {
                const auto& w = words[std::size_t(i - 1)];
                x[std::size_t(i - 1)] = superpose(w.c, w.p, sc.cfg.power(i));
                detail::check_power(x[std::size_t(i - 1)], sc.cfg.power(i), "transmitter");
                out.encoder_fallback[std::size_t(i - 1)] =
                    norm2(x[std::size_t(i - 1)]) == 0.0 && norm2(w.c) + norm2(w.p) > 0.0;
            }

            for (int r = 1; r <= 2; ++r) {
                const int o = 3 - r;
                const auto& s = *strat[std::size_t(r - 1)];
                const auto ri = std::size_t(r - 1), oi = std::size_t(o - 1);

                // Jamming. A forged codeword shares components with the truth
                // exactly when the forged indices coincide with the sent ones.
                std::vector<double> w;
                std::optional<detail::TrialWords> forged;
                if (s.kind == JammerKind::symmetrize) {
                    const int tu = s.target(r);
                    const auto ti = std::size_t(tu - 1);
                    const Message m = detail::draw_message(rng, Nci[ti], Npi[ti]);
                    const Message& sent_t = out.sent.user(tu);
                    detail::TrialWords f = detail::fresh_words(rng, n, sc.common_variance(tu), sc.private_variance(tu));
                    if (m.common == sent_t.common) {
                        f.c = words[ti].c;
                        if (m.priv == sent_t.priv)
                            f.p = words[ti].p;
                    }
                    const auto xf = superpose(f.c, f.p, sc.cfg.power(tu));
                    w = jam(s, r, sc.cfg, n, rng, xf);
                    if (tu == r) {
                        out.counterfeit[ri] = m;
                        if (!(m == out.sent.user(r)))
                            forged = std::move(f);
                    }
                } else {
                    w = jam(s, r, sc.cfg, n, rng);
                }
                detail::check_power(w, s.power_used(sc.cfg), "jammer");
                const auto y = detail::channel_output(sc.cfg, r, x[0], x[1], w, rng);

                const double a = sc.cfg.gain(r, r), b = sc.cfg.gain(r, o);
                const auto& own = words[ri];
                const auto& oc = words[oi].c;
                const TypicalityTest typical{n, sc.epsilon, sc.common_variance(r), sc.private_variance(r),
                                             sc.common_variance(o)};
                const auto mt = detail::moments(y, a, b, own.c, own.p, oc);
                std::uint8_t events = mt.rr >= 0.0 && typical(mt) ? 0 : E0;
                const double d0 = mt.rr;

                // Explicit competitor: the forged codeword paired with the true other common.
                std::optional<Message> decoded_as;
                if (forged) {
                    const auto mf = detail::moments(y, a, b, forged->c, forged->p, oc);
                    if (typical(mf) && mf.rr <= d0) {
                        const Message& m = *out.counterfeit[ri];
                        const Message& sent = out.sent.user(r);
                        events |= classify_competitor({sent.common, sent.priv, 0}, {m.common, m.priv, 0});
                        decoded_as = m;
                    }
                }

                // Analytic competitor classes.
                const auto len = static_cast<std::size_t>(n);
                std::vector<double> A(len), B(len), Cv(len);
                for (std::size_t k = 0; k < A.size(); ++k) {
                    A[k] = a * own.c[k];
                    B[k] = a * own.p[k];
                    Cv[k] = b * oc[k];
                }
                std::vector<double> z(y.begin(), y.end());
                for (std::size_t k = 0; k < z.size(); ++k)
                    z[k] -= A[k] + B[k] + Cv[k];
                auto energy = [&](bool ia, bool ib, bool ic) {
                    double e = 0.0;
                    for (std::size_t k = 0; k < z.size(); ++k) {
                        const double v = z[k] + (ia ? A[k] : 0.0) + (ib ? B[k] : 0.0) + (ic ? Cv[k] : 0.0);
                        e += v * v;
                    }
                    return e;
                };
                const double vA = a * a * sc.common_variance(r), vB = a * a * sc.private_variance(r);
                const double vC = b * b * sc.common_variance(o);
                struct Cls
                {
                    std::uint8_t event;
                    double log_count, t2, v;
                };
                const std::array<Cls, 4> classes{{
                    {E1, logNp1[ri], energy(false, true, false), vB},
                    {E2, logNc1[ri] + logNp[ri], energy(true, true, false), vA + vB},
                    {E3, logNp1[ri] + logNc1[oi], energy(false, true, true), vB + vC},
                    {E4, logNc1[ri] + logNp[ri] + logNc1[oi], energy(true, true, true), vA + vB + vC},
                }};
                std::uint8_t first_class = 0;
                for (const auto& c : classes) {
                    const double p = prob_any_log(c.log_count, detail::log_closer(c.t2, d0, c.v, n));
                    if (uniform01(rng) < p) {
                        events |= c.event;
                        if (!first_class)
                            first_class = c.event;
                    }
                }

                ReceiverOutcome ro;
                ro.events = events;
                const Message& sent = out.sent.user(r);
                if (!events)
                    ro.decoded = sent;
                else if (decoded_as)
                    ro.decoded = decoded_as;
                else if (first_class)
                    ro.decoded = detail::wrong_message(sent, first_class, Nci[ri], Npi[ri]);
                // only E0: no typical candidate is known, report a failure
                out.rx[ri] = ro;
            }
            res.outcomes[t] = std::move(out);
        },
        threads);
    res.stats = summarize(res.outcomes);
    return res;
}

inline RunResult run_trials(const SimConfig& sc, const JammerStrategy& s1, const JammerStrategy& s2,
                            unsigned threads = 0)
{
    return sc.mode == SimMode::exhaustive ? run_exhaustive(sc, s1, s2, threads) : run_ensemble(sc, s1, s2, threads);
}

} // namespace gicjam::sim
