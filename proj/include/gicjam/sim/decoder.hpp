#pragma once

// Minimum-distance decoding over the typical set.
//
// Receiver r searches all (own common, own private, other common) triples.
// A triple survives the typicality filter when the three codewords and the
// residual y - h x_c - h x_p - h' x_oc have second moments consistent with
// mutually independent variables: codeword powers match the codebook
// variances and all pairwise correlations vanish, each within epsilon times
// the product of the standard deviations. The survivor closest to y wins;
// ties keep the lexicographically smallest triple.

#include "codebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace gicjam::sim {

struct Triple
{
    std::size_t own_common = 0;
    std::size_t own_private = 0;
    std::size_t other_common = 0;
    bool operator==(const Triple&) const = default;
};

/// Error events as bit flags. E0: the true triple is not typical.
/// E1..E4: a triple at least as close as the truth exists with, in order,
/// a wrong private message only; a wrong common message; a wrong private and
/// wrong other-common message; wrong common and wrong other-common messages.
enum ErrorEvent : std::uint8_t { E0 = 1, E1 = 2, E2 = 4, E3 = 8, E4 = 16 };

inline std::uint8_t classify_competitor(const Triple& truth, const Triple& c)
{
    const bool oc = c.own_common != truth.own_common;
    const bool op = c.own_private != truth.own_private;
    const bool xc = c.other_common != truth.other_common;
    if (!oc && !op)
        return 0; // own message right; not an error
    if (!oc)
        return xc ? E3 : E1;
    return xc ? E4 : E2;
}

/// Second-moment statistics of a candidate (all inner products unscaled,
/// i.e. of the codewords themselves, and the residual).
struct CandidateMoments
{
    double cc, pp, oo;       // codeword energies
    double cp, co, po;       // codeword cross products
    double rc, rp, ro, rr;   // residual against each codeword, residual energy
};

struct TypicalityTest
{
    int n = 0;
    double epsilon = 0.25;
    double var_c = 0.0, var_p = 0.0, var_o = 0.0;

    bool power_ok(double energy, double var) const { return std::abs(energy / n - var) <= epsilon * var; }
    bool uncorrelated(double cross, double var_a, double var_b) const
    {
        return std::abs(cross / n) <= epsilon * std::sqrt(var_a * var_b);
    }

    bool operator()(const CandidateMoments& m) const
    {
        // Floor far below any noise level; keeps a noiseless residual, whose
        // cross terms are rounding residue, from failing the test.
        const double var_r = std::max(m.rr / n, 1e-12 * (var_c + var_p + var_o));
        return power_ok(m.cc, var_c) && power_ok(m.pp, var_p) && power_ok(m.oo, var_o) &&
               uncorrelated(m.cp, var_c, var_p) && uncorrelated(m.co, var_c, var_o) &&
               uncorrelated(m.po, var_p, var_o) && uncorrelated(m.rc, var_c, var_r) &&
               uncorrelated(m.rp, var_p, var_r) && uncorrelated(m.ro, var_o, var_r);
    }
};

struct DecodeResult
{
    std::optional<Triple> decoded; // nullopt: no typical triple (decode failure)
    std::uint8_t events = 0;       // filled when the truth is supplied
    bool truth_typical = true;
};

class Decoder
{
public:
    Decoder(const Codebooks& cb, const ChannelConfig& cfg, int receiver, double epsilon)
        : cb_(cb)
        , own_(cb.user(receiver))
        , other_(cb.user(3 - receiver))
        , h_own_(cfg.gain(receiver, receiver))
        , h_other_(cfg.gain(receiver, 3 - receiver))
    {
        n_ = cb.n;
        test_ = {n_, epsilon, own_.common.variance, own_.priv.variance, other_.common.variance};
        Nc_ = own_.common_count;
        Np_ = own_.private_count;
        No_ = other_.common_count;

        cc_.resize(Nc_);
        oo_.resize(No_);
        pp_.resize(Nc_ * Np_);
        cp_.resize(Nc_ * Np_);
        co_.resize(Nc_ * No_);
        po_.resize(Nc_ * Np_ * No_);
        for (std::size_t c = 0; c < Nc_; ++c)
            cc_[c] = norm2(own_.common.word(c));
        for (std::size_t o = 0; o < No_; ++o)
            oo_[o] = norm2(other_.common.word(o));
        for (std::size_t c = 0; c < Nc_; ++c) {
            const auto xc = own_.common.word(c);
            for (std::size_t o = 0; o < No_; ++o)
                co_[c * No_ + o] = dot(xc, other_.common.word(o));
            for (std::size_t p = 0; p < Np_; ++p) {
                const auto xp = own_.private_word(c, p);
                const std::size_t k = c * Np_ + p;
                pp_[k] = norm2(xp);
                cp_[k] = dot(xc, xp);
                for (std::size_t o = 0; o < No_; ++o)
                    po_[k * No_ + o] = dot(xp, other_.common.word(o));
            }
        }
    }

    std::size_t candidates() const { return Nc_ * Np_ * No_; }

    DecodeResult decode(std::span<const double> y, std::optional<Triple> truth = {}) const
    {
        std::vector<double> yc(Nc_), yp(Nc_ * Np_), yo(No_);
        for (std::size_t c = 0; c < Nc_; ++c)
            yc[c] = dot(y, own_.common.word(c));
        for (std::size_t c = 0; c < Nc_; ++c)
            for (std::size_t p = 0; p < Np_; ++p)
                yp[c * Np_ + p] = dot(y, own_.private_word(c, p));
        for (std::size_t o = 0; o < No_; ++o)
            yo[o] = dot(y, other_.common.word(o));
        const double yy = norm2(y);

        auto evaluate = [&](const Triple& t, CandidateMoments& m) {
            const std::size_t k = t.own_common * Np_ + t.own_private;
            const double a = h_own_, b = h_other_;
            m.cc = cc_[t.own_common];
            m.pp = pp_[k];
            m.oo = oo_[t.other_common];
            m.cp = cp_[k];
            m.co = co_[t.own_common * No_ + t.other_common];
            m.po = po_[k * No_ + t.other_common];
            m.rc = yc[t.own_common] - a * (m.cc + m.cp) - b * m.co;
            m.rp = yp[k] - a * (m.cp + m.pp) - b * m.po;
            m.ro = yo[t.other_common] - a * (m.co + m.po) - b * m.oo;
            m.rr = yy + a * a * (m.cc + m.pp + 2.0 * m.cp) + b * b * m.oo -
                   2.0 * a * (yc[t.own_common] + yp[k]) - 2.0 * b * yo[t.other_common] +
                   2.0 * a * b * (m.co + m.po);
            m.rr = std::max(m.rr, 0.0);
        };

        DecodeResult res;
        double truth_dist = std::numeric_limits<double>::infinity();
        if (truth) {
            CandidateMoments m{};
            evaluate(*truth, m);
            truth_dist = m.rr;
            res.truth_typical = test_(m);
            if (!res.truth_typical)
                res.events |= E0;
        }

        double best = std::numeric_limits<double>::infinity();
        CandidateMoments m{};
        for (std::size_t c = 0; c < Nc_; ++c)
            for (std::size_t p = 0; p < Np_; ++p)
                for (std::size_t o = 0; o < No_; ++o) {
                    const Triple t{c, p, o};
                    evaluate(t, m);
                    if (!test_(m))
                        continue;
                    if (m.rr < best) {
                        best = m.rr;
                        res.decoded = t;
                    }
                    if (truth && m.rr <= truth_dist && t != *truth)
                        res.events |= classify_competitor(*truth, t);
                }
        return res;
    }

private:
    const Codebooks& cb_;
    const UserBooks& own_;
    const UserBooks& other_;
    double h_own_, h_other_;
    int n_ = 0;
    TypicalityTest test_;
    std::size_t Nc_ = 1, Np_ = 1, No_ = 1;
    std::vector<double> cc_, oo_, pp_, cp_, co_, po_;
};

} // namespace gicjam::sim
