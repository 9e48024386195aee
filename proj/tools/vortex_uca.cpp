// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "vortex/cli/config.hpp"
#include "vortex/cli/experiments.hpp"
#include "vortex/errors.hpp"

namespace
{
    using namespace vortex::cli;

    struct Options
    {
        std::string config_path;
        std::string out_path;
        std::string grid;
        std::uint64_t seed = 0;
        bool seed_given = false;
    };

    unsigned thread_cap()
    {
        const char *env = std::getenv("VORTEX_UCA_THREADS");
        if (!env || !*env)
            return 1;
        unsigned value = 0;
        const std::string_view s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || value == 0)
            throw vortex::ValidationError("VORTEX_UCA_THREADS", "must be a positive integer");
        return value;
    }

    RunConfig load(Experiment e, const Options &opt)
    {
        RunConfig cfg = default_run_config(e);
        if (!opt.config_path.empty())
        {
            std::ifstream in(opt.config_path, std::ios::binary);
            if (!in)
                throw std::runtime_error("cannot open config '" + opt.config_path + "'");
            std::ostringstream text;
            text << in.rdbuf();
            cfg = parse_config(text.str(), cfg);
        }
        if (opt.seed_given)
            cfg.budget.seed = opt.seed;
        if (!opt.grid.empty())
            apply_grid_spec(cfg.sweep, opt.grid);
        cfg.output_path = opt.out_path;
        validate(cfg);
        return cfg;
    }

    void emit(const std::string &path, const std::string &text)
    {
        if (path.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open output '" + path + "'");
        out << text;
        if (!out.flush())
            throw std::runtime_error("write failed for '" + path + "'");
    }

    void run(Experiment e, const Options &opt)
    {
        const RunConfig cfg = load(e, opt);
        if (e == Experiment::demux_demo)
        {
            const auto demo = run_demux_demo(cfg);
            emit(cfg.output_path, demo.csv);
            (cfg.output_path.empty() ? std::cerr : std::cout) << demo.report;
            return;
        }
        emit(cfg.output_path, run_experiment(e, cfg, thread_cap()));
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Simulate OAM links between parallel, non-coaxial uniform circular arrays"};
    app.require_subcommand(1);

    Options opt;
    const std::pair<Experiment, const char *> commands[] = {
        {Experiment::error_sweep, "Closed-form vs direct-sum mode gain error over array sizes"},
        {Experiment::gain_vs_phi, "Mode gain magnitudes versus the tilt angle phi"},
        {Experiment::gain_vs_theta, "Mode gain magnitudes versus the bearing angle theta"},
        {Experiment::se_vs_phi, "Spectrum efficiency versus the tilt angle phi"},
        {Experiment::demux_demo, "Synthesize, propagate and demultiplex random symbols"}};

    for (const auto &[experiment, help] : commands)
    {
        auto *sub = app.add_subcommand(std::string(to_string(experiment)), help);
        sub->add_option("--config", opt.config_path, "Key-value config file ([geometry], [budget], [sweep])");
        sub->add_option("--out", opt.out_path, "Output CSV path (stdout when omitted)");
        sub->add_option("--seed", opt.seed, "RNG seed, overrides the config")->each([&](const std::string &)
                                                                                      { opt.seed_given = true; });
        sub->add_option("--grid", opt.grid, "Sweep grid START:STOP:STEPS (inclusive, STEPS points)");
        sub->callback([&opt, e = experiment]
                      { run(e, opt); });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
