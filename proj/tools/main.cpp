#include "commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv)
{
    using namespace gicjam::cli;
    CLI::App app{"Interference channel with jammers: regions, symmetric capacity, DoF, simulation"};
    app.require_subcommand(1);

    Options opt;
    std::uint64_t seed = 0;
    double step = 0.0;
    int trials = 0;

    struct Sub
    {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"region", "outer, fixed-alpha and jammer-constrained inner regions with vertices (JSON)"},
        {"symcap", "symmetric capacity bounds along a sweep of S, I or J (CSV)"},
        {"dof", "symmetric degrees of freedom along a sweep of beta or delta (CSV)"},
        {"simulate", "Monte-Carlo error rates against jammer strategies (CSV summary)"},
        {"reduce", "equivalent two-jammer parameters of a cross-gain matrix (JSON)"},
    };
    std::vector<std::pair<std::string, CLI::App*>> apps;
    std::vector<CLI::Option*> seed_opts, step_opts, trial_opts;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("-c,--config", opt.config, "JSON config file")->required();
        seed_opts.push_back(sub->add_option("--seed", seed, "RNG seed (default: GICJAM_SEED, config, 1)"));
        sub->add_option("-o,--out", opt.out, "output file (default stdout)");
        step_opts.push_back(sub->add_option("--step", step, "sweep step or alpha-grid step"));
        trial_opts.push_back(sub->add_option("--trials", trials, "number of Monte-Carlo trials")->check(CLI::PositiveNumber));
        sub->add_option("--log", opt.log, "simulate: JSON-lines trial log");
        sub->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
        apps.emplace_back(s.name, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    for (std::size_t k = 0; k < apps.size(); ++k) {
        if (!apps[k].second->parsed())
            continue;
        if (seed_opts[k]->count())
            opt.seed = seed;
        if (step_opts[k]->count())
            opt.step = step;
        if (trial_opts[k]->count())
            opt.trials = trials;
        return run(apps[k].first, opt, std::cerr);
    }
    return kConfigError;
}
