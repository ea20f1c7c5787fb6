#pragma once

// Subcommands of the gicjam tool. Each takes the parsed JSON config plus flag
// overrides and writes to a stream, so tests can drive them in-process.

#include <gicjam/io.hpp>
#include <gicjam/parallel.hpp>
#include <gicjam/sim/plan.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gicjam::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string log; // simulate: JSON-lines trial log
    std::optional<double> step;
    std::optional<int> trials;
    unsigned threads = 0;
};

inline json load_config(const std::string& path)
{
    if (path.empty())
        throw ConfigError("--config is required");
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config " + path + ": " + e.what());
    }
}

/// --seed, then GICJAM_SEED, then the config's "seed", then 1.
inline std::uint64_t resolve_seed(const Options& o, const json& cfg)
{
    if (o.seed)
        return *o.seed;
    if (const char* env = std::getenv("GICJAM_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("GICJAM_SEED is not an unsigned integer: ") + env);
        }
    }
    return cfg.value("seed", std::uint64_t(1));
}

inline NormalizedParams params_from(const json& cfg)
{
    NormalizedParams p;
    if (cfg.contains("params"))
        p = cfg.at("params").get<NormalizedParams>();
    else if (cfg.contains("channel"))
        p = normalize(cfg.at("channel").get<ChannelConfig>());
    else
        throw ConfigError("config needs \"params\" or \"channel\"");
    p.validate();
    return p;
}

inline ChannelConfig channel_from(const json& cfg)
{
    auto c = cfg.contains("channel") ? cfg.at("channel").get<ChannelConfig>() : channel_for(params_from(cfg));
    c.validate();
    return c;
}

struct Sweep
{
    std::string variable;
    double start = 0.0, stop = 0.0, step = 0.0;

    std::vector<double> points() const
    {
        std::vector<double> x;
        const auto count = long(std::floor((stop - start) / step + 1e-9));
        for (long k = 0; k <= count; ++k)
            x.push_back(start + double(k) * step);
        return x;
    }
};

inline Sweep sweep_from(const json& cfg, const Options& o, const std::vector<std::string>& allowed)
{
    if (!cfg.contains("sweep"))
        throw ConfigError("config needs a \"sweep\" block");
    const auto& s = cfg.at("sweep");
    Sweep sw{s.at("variable").get<std::string>(), s.at("start").get<double>(), s.at("stop").get<double>(),
             o.step.value_or(s.at("step").get<double>())};
    if (std::ranges::find(allowed, sw.variable) == allowed.end())
        throw ConfigError("sweep variable not supported here: " + sw.variable);
    if (!(sw.step > 0.0) || !(sw.stop >= sw.start))
        throw ConfigError("sweep needs step > 0 and stop >= start");
    return sw;
}

inline double fixed_value(const json& cfg, const char* key)
{
    if (!cfg.contains("fixed") || !cfg.at("fixed").contains(key))
        throw ConfigError(std::string("sweep needs fixed.") + key);
    return cfg.at("fixed").at(key).get<double>();
}

// ---------------------------------------------------------------------------

inline void cmd_region(const json& cfg, const Options& o, std::ostream& out)
{
    const auto p = params_from(cfg);
    const double step = o.step.value_or(cfg.value("alpha_step", 0.1));
    if (!(step > 0.0 && step <= 0.1))
        throw ConfigError("alpha step must lie in (0, 0.1]");
    const AlphaPair a = cfg.contains("alpha") ? cfg.at("alpha").get<AlphaPair>() : halfbit_alpha(p);
    if (!a.valid())
        throw ConfigError("alpha must lie in [0,1]^2");

    const auto outer = outer_region(p);
    const auto tilde = tilde_inner_region(p, step);
    const bool feasible = !p.jammer_dominates() && alpha_feasible(p, a);

    json j;
    j["schema"] = kSchemaRegion;
    j["params"] = p;
    j["empty"] = outer.empty && tilde.empty();
    j["outer"] = outer;
    j["hk"] = json{{"alpha", a}, {"feasible", feasible}, {"region", remove_redundant(hk_region(p, a))}};
    json t = tilde;
    t["alpha_step"] = step;
    j["tilde"] = t;
    j["split_system"] = split_system(p, a);
    j["halfbit"] = json{{"alpha", halfbit_alpha(p)},
                        {"certificate", halfbit_certificate(p)},
                        {"printed_condition", halfbit_printed_condition(p)}};
    out << j.dump(2) << '\n';
}

inline void cmd_symcap(const json& cfg, const Options& o, std::ostream& out)
{
    const auto sw = sweep_from(cfg, o, {"J", "I", "S"});
    const double alpha_step = cfg.value("alpha_step", 1e-3);
    const auto xs = sw.points();
    std::vector<SymcapBounds> rows(xs.size());
    parallel_for(
        xs.size(),
        [&](std::size_t k) {
            double S = sw.variable == "S" ? xs[k] : fixed_value(cfg, "S");
            double I = sw.variable == "I" ? xs[k] : fixed_value(cfg, "I");
            double J = sw.variable == "J" ? xs[k] : fixed_value(cfg, "J");
            rows[k] = symcap_bounds(S, I, J, alpha_step);
        },
        o.threads);
    CsvWriter csv(out, kSchemaSymcap, {"x", "outer", "tilde_inner", "hk_inner", "hk_suboptimal_alpha"});
    for (std::size_t k = 0; k < xs.size(); ++k)
        csv.row({xs[k], rows[k].upper, rows[k].lower, rows[k].hk, rows[k].hk_suboptimal});
}

inline void cmd_dof(const json& cfg, const Options& o, std::ostream& out)
{
    const auto sw = sweep_from(cfg, o, {"beta", "delta"});
    const double S_max = cfg.value("S_max", 1e6);
    const double alpha_step = cfg.value("alpha_step", 1e-3);
    const auto xs = sw.points();
    std::vector<std::array<double, 5>> rows(xs.size());
    parallel_for(
        xs.size(),
        [&](std::size_t k) {
            const double beta = sw.variable == "beta" ? xs[k] : fixed_value(cfg, "beta");
            const double delta = sw.variable == "delta" ? xs[k] : fixed_value(cfg, "delta");
            const auto s = dof_numeric(beta, delta, {S_max}, alpha_step).front();
            rows[k] = {beta, delta, dof_closed_form(beta, delta), s.lower, s.upper};
        },
        o.threads);
    CsvWriter csv(out, kSchemaDof, {"beta", "delta", "closed_form", "lower_at_Smax", "upper_at_Smax"});
    for (const auto& r : rows)
        csv.row({r.begin(), r.end()});
}

inline sim::SimConfig sim_config_from(const json& cfg, const Options& o)
{
    sim::SimConfig sc;
    sc.cfg = channel_from(cfg);
    sc.n = cfg.value("n", sc.n);
    sc.gamma = cfg.value("gamma", sc.gamma);
    sc.epsilon = cfg.value("epsilon", sc.epsilon);
    sc.trials = o.trials.value_or(cfg.value("trials", sc.trials));
    sc.seed = resolve_seed(o, cfg);
    const auto mode = cfg.value("mode", std::string("exhaustive"));
    if (mode == "exhaustive")
        sc.mode = sim::SimMode::exhaustive;
    else if (mode == "ensemble")
        sc.mode = sim::SimMode::ensemble;
    else
        throw ConfigError("mode must be exhaustive or ensemble");

    if (cfg.contains("rates")) {
        sc.rates = cfg.at("rates").get<SplitRates>();
        sc.alpha = cfg.contains("alpha") ? cfg.at("alpha").get<AlphaPair>() : AlphaPair{};
    } else if (cfg.contains("operating_point")) {
        // {"scale": 0.8, "reference": "inner" | "outer"}
        const auto& op = cfg.at("operating_point");
        const auto ref = op.value("reference", std::string("inner"));
        if (ref != "inner" && ref != "outer")
            throw ConfigError("operating_point.reference must be inner or outer");
        const auto pt = sim::symmetric_operating_point(
            normalize(sc.cfg), op.at("scale").get<double>(),
            ref == "inner" ? sim::RateReference::inner : sim::RateReference::outer, sc.gamma);
        sc.rates = pt.rates;
        sc.alpha = pt.alpha;
    } else {
        throw ConfigError("simulate needs \"rates\" or \"operating_point\"");
    }
    sc.validate();
    return sc;
}

struct NamedStrategies
{
    std::string name;
    sim::JammerStrategy jammer1, jammer2;
};

inline std::vector<NamedStrategies> strategies_from(const json& cfg)
{
    std::vector<NamedStrategies> out;
    if (!cfg.contains("strategies"))
        return {{"gaussian_noise", sim::JammerStrategy::gaussian(), sim::JammerStrategy::gaussian()}};
    for (const auto& s : cfg.at("strategies")) {
        NamedStrategies ns;
        ns.jammer1 = s.at("jammer1").get<sim::JammerStrategy>();
        ns.jammer2 = s.at("jammer2").get<sim::JammerStrategy>();
        ns.name = s.value("name", sim::to_string(ns.jammer1.kind) + "/" + sim::to_string(ns.jammer2.kind));
        out.push_back(std::move(ns));
    }
    return out;
}

inline void cmd_simulate(const json& cfg, const Options& o, std::ostream& out)
{
    const auto sc = sim_config_from(cfg, o);
    const auto strategies = strategies_from(cfg);
    std::ofstream log;
    if (!o.log.empty()) {
        log.open(o.log);
        if (!log)
            throw std::runtime_error("cannot write trial log: " + o.log);
    }

    CsvWriter csv(out, kSchemaSummary, {"strategy", "n", "R1", "R2", "err1", "err2", "ci_low", "ci_high"});
    for (const auto& st : strategies) {
        const auto res = sim::run_trials(sc, st.jammer1, st.jammer2, o.threads);
        const auto& s = res.stats;
        csv.write_fields({st.name, std::to_string(sc.n), fmt_num(sc.rates.R1()), fmt_num(sc.rates.R2()),
                          fmt_num(s.receiver(1).rate), fmt_num(s.receiver(2).rate), fmt_num(s.block_ci.low),
                          fmt_num(s.block_ci.high)});
        if (log)
            for (const auto& t : res.outcomes) {
                json j = t;
                j["strategy"] = st.name;
                log << j.dump() << '\n';
            }
    }
}

inline void cmd_reduce(const json& cfg, const Options&, std::ostream& out)
{
    const auto m = cfg.get<CrossMatrix>();
    const auto r = reduce_jammers(m);
    const auto [g1, g2] = equivalent_jammer_gains(m);
    json j{{"schema", kSchemaParams}, {"jammers", m.jammers()}, {"g1", g1}, {"g2", g2}, {"J1", r.J1}, {"J2", r.J2}};
    if (cfg.contains("channel")) {
        auto c = cfg.at("channel").get<ChannelConfig>();
        c.g1 = g1;
        c.g2 = g2;
        c.Lambda = m.Lambda;
        c.sigma2 = m.sigma2;
        j["channel"] = c;
        j["params"] = normalize(c);
    }
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

/// Runs one subcommand, mapping failures to exit codes.
inline int run(const std::string& command, const Options& o, std::ostream& err)
{
    try {
        const json cfg = load_config(o.config);
        std::ostringstream buf;
        if (command == "region")
            cmd_region(cfg, o, buf);
        else if (command == "symcap")
            cmd_symcap(cfg, o, buf);
        else if (command == "dof")
            cmd_dof(cfg, o, buf);
        else if (command == "simulate")
            cmd_simulate(cfg, o, buf);
        else if (command == "reduce")
            cmd_reduce(cfg, o, buf);
        else
            throw ConfigError("unknown command: " + command);

        if (o.out.empty() || o.out == "-") {
            std::cout << buf.str();
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot write " + o.out);
            f << buf.str();
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const sim::ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const sim::StrategyError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace gicjam::cli
