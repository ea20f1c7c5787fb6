#pragma once

// JSON and CSV serialization. Every document carries a versioned schema tag.

#include "bounds.hpp"
#include "dof.hpp"
#include "params.hpp"
#include "ratesplit.hpp"
#include "region.hpp"
#include "sim/jammer.hpp"
#include "sim/lemma.hpp"
#include "sim/simulate.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace gicjam {

inline constexpr const char* kSchemaRegion = "gicjam.region/1";
inline constexpr const char* kSchemaSymcap = "gicjam.symcap/1";
inline constexpr const char* kSchemaDof = "gicjam.dof/1";
inline constexpr const char* kSchemaSummary = "gicjam.sim-summary/1";
inline constexpr const char* kSchemaTrial = "gicjam.sim-trial/1";
inline constexpr const char* kSchemaParams = "gicjam.params/1";

using nlohmann::json;

inline void to_json(json& j, const ChannelConfig& c)
{
    j = json{{"h11", c.h11}, {"h12", c.h12}, {"h21", c.h21}, {"h22", c.h22}, {"g1", c.g1},
             {"g2", c.g2},   {"P1", c.P1},   {"P2", c.P2},   {"Lambda", c.Lambda}, {"sigma2", c.sigma2}};
}

inline void from_json(const json& j, ChannelConfig& c)
{
    ChannelConfig d;
    c.h11 = j.value("h11", d.h11);
    c.h12 = j.value("h12", d.h12);
    c.h21 = j.value("h21", d.h21);
    c.h22 = j.value("h22", d.h22);
    c.g1 = j.value("g1", d.g1);
    c.g2 = j.value("g2", d.g2);
    c.P1 = j.value("P1", d.P1);
    c.P2 = j.value("P2", d.P2);
    c.Lambda = j.value("Lambda", d.Lambda);
    c.sigma2 = j.value("sigma2", d.sigma2);
}

inline void to_json(json& j, const NormalizedParams& p)
{
    j = json{{"S1", p.S1}, {"S2", p.S2}, {"I1", p.I1}, {"I2", p.I2}, {"J1", p.J1}, {"J2", p.J2}};
}

/// Accepts either per-receiver keys or symmetric S, I, J.
inline void from_json(const json& j, NormalizedParams& p)
{
    if (j.contains("S")) {
        p = NormalizedParams::symmetric(j.at("S").get<double>(), j.value("I", 0.0), j.value("J", 0.0));
        return;
    }
    p.S1 = j.at("S1").get<double>();
    p.S2 = j.at("S2").get<double>();
    p.I1 = j.value("I1", 0.0);
    p.I2 = j.value("I2", 0.0);
    p.J1 = j.value("J1", 0.0);
    p.J2 = j.value("J2", 0.0);
}

inline void to_json(json& j, const AlphaPair& a) { j = json::array({a.alpha1, a.alpha2}); }

inline void from_json(const json& j, AlphaPair& a)
{
    if (j.is_number()) {
        a.alpha1 = a.alpha2 = j.get<double>();
    } else {
        a.alpha1 = j.at(0).get<double>();
        a.alpha2 = j.at(1).get<double>();
    }
}

inline void to_json(json& j, const SplitRates& s)
{
    j = json{{"R1c", s.R1c}, {"R1p", s.R1p}, {"R2c", s.R2c}, {"R2p", s.R2p}};
}

inline void from_json(const json& j, SplitRates& s)
{
    s.R1c = j.value("R1c", 0.0);
    s.R1p = j.value("R1p", 0.0);
    s.R2c = j.value("R2c", 0.0);
    s.R2p = j.value("R2p", 0.0);
}

inline void to_json(json& j, const SplitInequality& r)
{
    j = json{{"receiver", r.receiver}, {"label", r.label}, {"coeff", r.coeff}, {"bound", r.bound}};
}

inline void to_json(json& j, const Halfspace& h) { j = json{{"a1", h.a1}, {"a2", h.a2}, {"b", h.b}}; }
inline void to_json(json& j, const Point& p) { j = json::array({p.R1, p.R2}); }

inline void to_json(json& j, const RateRegion& r)
{
    j = json{{"empty", r.empty}, {"open", r.open}};
    if (!r.empty) {
        j["halfspaces"] = r.halfspaces;
        j["vertices"] = vertices(r);
    }
}

inline void to_json(json& j, const UnionRegion& u)
{
    j = json{{"empty", u.empty()}, {"members", json::array()}};
    for (const auto& m : u.members)
        j["members"].push_back(json{{"alpha", m.alpha}, {"region", m.region}});
}

inline void to_json(json& j, const SymcapBounds& b)
{
    j = json{{"lower", b.lower},         {"upper", b.upper},           {"hk", b.hk},
             {"hk_suboptimal", b.hk_suboptimal}, {"best_alpha", b.best_alpha}, {"best_alpha_hk", b.best_alpha_hk}};
}

inline void from_json(const json& j, CrossMatrix& m)
{
    m.row1 = j.at("rows").at(0).get<std::vector<double>>();
    m.row2 = j.at("rows").at(1).get<std::vector<double>>();
    m.Lambda = j.value("Lambda", 1.0);
    m.sigma2 = j.value("sigma2", 1.0);
}

namespace sim {

inline void to_json(json& j, const Message& m) { j = json::array({m.common, m.priv}); }

inline void to_json(json& j, const JammerStrategy& s)
{
    j = json{{"kind", to_string(s.kind)}};
    if (s.power)
        j["power"] = *s.power;
    if (s.kind == JammerKind::symmetrize)
        j["target_user"] = s.target_user;
    if (s.kind == JammerKind::fixed_vector)
        j["w"] = s.w;
}

inline void from_json(const json& j, JammerStrategy& s)
{
    const auto kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
    std::optional<double> power;
    if (j.is_object() && j.contains("power"))
        power = j.at("power").get<double>();
    if (kind == "gaussian_noise")
        s = JammerStrategy::gaussian(power);
    else if (kind == "symmetrize")
        s = JammerStrategy::symmetrizer(j.is_object() ? j.value("target_user", 0) : 0, power);
    else if (kind == "fixed_vector")
        s = JammerStrategy::fixed(j.at("w").get<std::vector<double>>(), power);
    else
        throw StrategyError("unknown jammer kind: " + kind);
}

inline std::string events_string(std::uint8_t ev)
{
    std::string s;
    for (int e = 0; e < 5; ++e)
        if (ev & (1u << e)) {
            if (!s.empty())
                s += ',';
            s += 'E' + std::to_string(e);
        }
    return s;
}

inline void to_json(json& j, const TrialOutcome& t)
{
    j = json{{"schema", kSchemaTrial},
             {"trial", t.index},
             {"sent", json::array({t.sent.m1.common, t.sent.m1.priv, t.sent.m2.common, t.sent.m2.priv})}};
    for (int r = 1; r <= 2; ++r) {
        const auto& o = t.receiver(r);
        const std::string key = "rx" + std::to_string(r);
        json rj;
        rj["decoded"] = o.decoded ? json(*o.decoded) : json("decode_failure");
        rj["events"] = json::array();
        for (int e = 0; e < 5; ++e)
            if (o.events & (1u << e))
                rj["events"].push_back("E" + std::to_string(e));
        if (t.counterfeit[std::size_t(r - 1)])
            rj["counterfeit"] = *t.counterfeit[std::size_t(r - 1)];
        j[key] = rj;
    }
}

inline void to_json(json& j, const ErrorStats& s)
{
    j = json{{"trials", s.trials},
             {"block_errors", s.block_errors},
             {"block_rate", s.block_rate},
             {"block_ci", json::array({s.block_ci.low, s.block_ci.high})},
             {"encoder_fallbacks", s.encoder_fallbacks}};
    for (int r = 1; r <= 2; ++r) {
        const auto& rs = s.receiver(r);
        j["rx" + std::to_string(r)] = json{{"errors", rs.errors},
                                           {"rate", rs.rate},
                                           {"ci", json::array({rs.ci.low, rs.ci.high})},
                                           {"events", rs.events}};
    }
}

inline void to_json(json& j, const LemmaEstimate& e)
{
    j = json{{"p2", e.p2}, {"worst", to_string(e.worst)}};
    for (std::size_t p = 0; p < kLemmaProbes.size(); ++p)
        j["probes"][to_string(kLemmaProbes[p])] = json{{"mean", e.per_probe[p]}, {"stderr", e.per_probe_stderr[p]}};
}

} // namespace sim

/// Shortest round-trip-safe decimal; identical inputs give identical text.
inline std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// CSV with a leading "# schema=..." comment line and a header row.
class CsvWriter
{
public:
    CsvWriter(std::ostream& os, const char* schema, const std::vector<std::string>& header) : os_(os)
    {
        os_ << "# schema=" << schema << '\n';
        write_fields(header);
    }

    void row(const std::vector<double>& values)
    {
        std::vector<std::string> f;
        f.reserve(values.size());
        for (double v : values)
            f.push_back(fmt_num(v));
        write_fields(f);
    }

    void write_fields(const std::vector<std::string>& fields)
    {
        for (std::size_t k = 0; k < fields.size(); ++k)
            os_ << (k ? "," : "") << fields[k];
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

} // namespace gicjam
