// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#include "vortex/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vortex/cli/csv.hpp"
#include "vortex/vortex.hpp"

namespace vortex::cli
{
    namespace
    {
        void require_axis(const RunConfig &config, SweepAxis expected)
        {
            if (config.sweep.variable != expected)
                throw ValidationError("variable", "this experiment sweeps '" + std::string(to_string(expected)) +
                                                      "', config asks for '" + std::string(to_string(config.sweep.variable)) + "'");
        }

        void add_metadata(CsvDocument &doc, Experiment e, const RunConfig &config)
        {
            doc.comment(std::string("tool: ") + tool_version);
            doc.comment("experiment: " + std::string(to_string(e)));
            doc.comment("resolved config (unset keys take the reference values N=M=10, r=R=lambda=0.1 m, d=1 m, beta=4pi, mode_power=1, noise_variance=0.01):");
            doc.comment_block(to_config_text(config));
            if (LinkGeometry<double>(config.geometry).far_field_advisory())
                doc.comment("warning: distance_m < 5 max(radius); far-field closed forms are inaccurate");
        }

        std::string angle_column(SweepAxis axis)
        {
            return axis == SweepAxis::phi ? "phi_rad" : "theta_rad";
        }

        LinkParams<double> with_axis(LinkParams<double> p, SweepAxis axis, double value)
        {
            switch (axis)
            {
            case SweepAxis::phi:
                p.tilt_phi = value;
                break;
            case SweepAxis::theta:
                p.bearing_theta = value;
                break;
            case SweepAxis::distance:
                p.center_distance = value;
                break;
            case SweepAxis::n_tx:
                p.n_tx = static_cast<std::size_t>(std::llround(value));
                break;
            }
            return p;
        }
    }

    ErrorSweepResult error_sweep(const RunConfig &config, unsigned threads)
    {
        validate(config);
        require_axis(config, SweepAxis::n_tx);
        const auto grid = config.sweep.grid();
        std::vector<std::size_t> sizes;
        for (const double v : grid)
        {
            const double rounded = std::round(v);
            if (std::abs(v - rounded) > 1e-9 || rounded < 2.0)
                throw ValidationError("n_tx", "error-sweep grid must hold integers >= 2, got " + format_roundtrip(v));
            const auto n = static_cast<std::size_t>(rounded);
            if (n % 2 != 0)
                throw ValidationError("n_tx", "error-sweep grid must hold even element counts, got " + std::to_string(n));
            sizes.push_back(n);
        }

        std::vector<std::vector<ErrorRow>> rows(sizes.size());
        std::vector<std::string> skipped(sizes.size());
        parallel_for(sizes.size(), threads, [&](std::size_t i)
                     {
            auto p = config.geometry;
            p.n_tx = sizes[i];
            const LinkGeometry<double> g(p);
            const auto modes = mode_index_set(g);
            for (int l = 0; l <= error_sweep_max_mode; ++l)
            {
                if (modes.contains(l))
                    rows[i].push_back({sizes[i], l, max_approximation_error(g, l)});
                else
                    skipped[i] += (skipped[i].empty() ? "" : " ") + std::to_string(l);
            } });

        ErrorSweepResult out;
        for (std::size_t i = 0; i < sizes.size(); ++i)
        {
            out.rows.insert(out.rows.end(), rows[i].begin(), rows[i].end());
            if (!skipped[i].empty())
                out.exclusions.push_back("n_elements=" + std::to_string(sizes[i]) + ": modes " + skipped[i] + " outside the mode set, skipped");
        }
        return out;
    }

    std::string run_error_sweep(const RunConfig &config, unsigned threads)
    {
        const auto result = error_sweep(config, threads);
        CsvDocument doc({"n_elements", "mode", "log10_error"});
        add_metadata(doc, Experiment::error_sweep, config);
        doc.comment("log10_error: log10 max_m |closed form - direct sum|");
        for (const auto &e : result.exclusions)
            doc.comment("excluded: " + e);
        for (const auto &r : result.rows)
            doc.row({std::to_string(r.n_elements), std::to_string(r.mode), format_real(r.log10_error)});
        return doc.str();
    }

    std::vector<GainRow> gain_sweep(const RunConfig &config, SweepAxis axis, unsigned threads)
    {
        if (axis != SweepAxis::phi && axis != SweepAxis::theta)
            throw ValidationError("variable", "gain sweeps run over phi or theta");
        validate(config);
        require_axis(config, axis);
        const auto grid = config.sweep.grid();
        const double half_pi = std::numbers::pi / 2;
        for (const double v : grid)
        {
            if (axis == SweepAxis::phi && (v < 0.0 || v > half_pi + 1e-12))
                throw ValidationError("phi_rad", "gain-vs-phi grid must lie in [0, pi/2]");
            if (axis == SweepAxis::theta && (v < 0.0 || v >= 2.0 * std::numbers::pi))
                throw ValidationError("theta_rad", "gain-vs-theta grid must lie in [0, 2pi)");
        }

        const std::size_t elements = std::min(gain_sweep_elements, config.geometry.n_rx);
        const auto modes = ModeIndexSet(config.geometry.n_tx);
        std::vector<std::vector<GainRow>> rows(grid.size());
        parallel_for(grid.size(), threads, [&](std::size_t i)
                     {
            const LinkGeometry<double> g(with_axis(config.geometry, axis, grid[i]));
            for (std::size_t m = 0; m < elements; ++m)
                for (const int l : modes)
                {
                    GainRow row{grid[i], m + 1, l, std::nullopt};
                    try
                    {
                        row.gain = std::abs(mode_gain_closed(g, m, l));
                    }
                    catch (const DegenerateGeometry &)
                    {
                    }
                    rows[i].push_back(row);
                } });

        std::vector<GainRow> out;
        for (auto &r : rows)
            out.insert(out.end(), r.begin(), r.end());
        return out;
    }

    std::string run_gain_sweep(const RunConfig &config, SweepAxis axis, unsigned threads)
    {
        const auto rows = gain_sweep(config, axis, threads);
        CsvDocument doc({angle_column(axis), "m", "mode", "gain_abs"});
        add_metadata(doc, axis == SweepAxis::phi ? Experiment::gain_vs_phi : Experiment::gain_vs_theta, config);
        doc.comment("gain_abs: |h~_ml| from the closed form; m is the 1-based receive element; nan marks a degenerate point");
        for (const auto &r : rows)
            doc.row({format_real(r.angle), std::to_string(r.element), std::to_string(r.mode),
                     format_real(r.gain.value_or(std::numeric_limits<double>::quiet_NaN()))});
        return doc.str();
    }

    std::string run_se_sweep(const RunConfig &config, unsigned threads)
    {
        validate(config);
        require_axis(config, SweepAxis::phi);
        const auto grid = config.sweep.grid();
        for (const double v : grid)
            if (v < 0.0 || v > std::numbers::pi / 2 + 1e-12)
                throw ValidationError("phi_rad", "se-vs-phi grid must lie in [0, pi/2]");

        const LinkGeometry<double> g(config.geometry);
        auto budget = LinkBudget<double>::uniform(g, config.budget.mode_power, config.budget.noise_variance);
        budget.noise.seed = config.budget.seed;
        const auto points = se_sweep<double>(config.geometry, SweepVariable::phi, grid, budget, threads);

        CsvDocument doc({"phi_rad", "spectrum_efficiency_bps_hz"});
        add_metadata(doc, Experiment::se_vs_phi, config);
        doc.comment("budget: |s_l|^2 = " + format_roundtrip(config.budget.mode_power) + " for every mode, sigma_m^2 = " +
                    format_roundtrip(config.budget.noise_variance) + " for every receive element");
        doc.comment("note: absolute values and the argmax position depend on this budget");

        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            if (!points[i].efficiency)
            {
                doc.comment("gap at phi_rad=" + format_real(points[i].value) + ": " + points[i].gap_reason);
                continue;
            }
            if (!best || *points[i].efficiency > *points[*best].efficiency)
                best = i;
        }
        if (best)
            doc.comment("argmax phi_rad=" + format_real(points[*best].value) + " spectrum_efficiency=" + format_real(*points[*best].efficiency));
        for (const auto &p : points)
            doc.row({format_real(p.value), format_real(p.efficiency.value_or(std::numeric_limits<double>::quiet_NaN()))});
        return doc.str();
    }

    DemoResult run_demux_demo(const RunConfig &config)
    {
        validate(config);
        const LinkGeometry<double> g(config.geometry);
        const auto modes = mode_index_set(g);
        const auto L = Eigen::Index(modes.size());

        // Unit-power symbols with seeded phases; stream ids above any trial index.
        constexpr std::uint64_t symbol_stream = 0xfffffffful;
        ModeSymbolVector<double> symbols{CVector<double>(L)};
        for (Eigen::Index j = 0; j < L; ++j)
            symbols.symbols(j) = std::polar(1.0, 2.0 * std::numbers::pi * detail::counter_uniform(config.budget.seed, symbol_stream, std::uint64_t(j), 0));

        const auto noise = NoiseModel<double>::uniform(g.n_rx(), config.budget.noise_variance, config.budget.seed);

        // Modes whose weights are finite at every receive element.
        std::vector<std::optional<CVector<double>>> weights(modes.size());
        std::ostringstream report;
        report << tool_version << " demux-demo\n";
        for (std::size_t j = 0; j < modes.size(); ++j)
        {
            try
            {
                weights[j] = demux_weight_column(g, modes[j]);
            }
            catch (const ModeUnobservable &e)
            {
                report << "mode " << modes[j] << ": " << e.what() << '\n';
            }
        }
        const bool all_observable = std::all_of(weights.begin(), weights.end(), [](const auto &w)
                                                { return w.has_value(); });
        const std::complex<double> scale = double(g.n_rx()) * mode_scalar(g);

        struct Variant
        {
            std::string name;
            ModeChannelMatrix<double> channel;
        };
        const std::vector<Variant> variants = {
            {"model", mode_channel_closed(g)},
            {"farfield", mode_channel(g, channel_matrix(g, ChannelVariant::farfield))},
            {"exact", mode_channel(g, channel_matrix(g, ChannelVariant::exact))}};

        CsvDocument doc({"channel_variant", "noise", "mode", "abs_error"});
        add_metadata(doc, Experiment::demux_demo, config);
        doc.comment("model: closed-form mode gains; farfield/exact: element channel driven by the transmit synthesis");

        DemoResult result;
        report.setf(std::ios::scientific);
        report.precision(6);
        for (const auto &v : variants)
        {
            for (const bool noisy : {false, true})
            {
                ElementSignalVector<double> rx;
                if (v.name == "model")
                    rx = propagate_modes(symbols, v.channel, noisy ? std::optional(noise) : std::nullopt);
                else
                {
                    const auto tx = synthesize_transmit(symbols, g);
                    const auto h = channel_matrix(g, v.name == "exact" ? ChannelVariant::exact : ChannelVariant::farfield);
                    rx = propagate(tx, h, noisy ? std::optional(noise) : std::nullopt);
                }
                double worst = 0.0;
                for (std::size_t j = 0; j < modes.size(); ++j)
                {
                    DemoRow row{v.name, noisy ? "awgn" : "none", modes[j], std::nullopt};
                    if (weights[j])
                    {
                        const std::complex<double> estimate = rx.samples.cwiseProduct(*weights[j]).sum() / scale;
                        row.abs_error = std::abs(estimate - symbols.symbols(Eigen::Index(j)));
                        worst = std::max(worst, *row.abs_error);
                    }
                    result.rows.push_back(row);
                }
                report << v.name << (noisy ? " awgn " : " none ") << "max |s_hat - s| = " << worst << '\n';
            }
            if (all_observable)
            {
                const auto x = crosstalk_matrix(g, v.channel);
                const auto tx = synthesize_transmit(symbols, g);
                const auto rx = v.name == "model" ? propagate_modes(symbols, v.channel)
                                                  : propagate(tx, channel_matrix(g, v.name == "exact" ? ChannelVariant::exact : ChannelVariant::farfield));
                const auto out = demultiplex(rx, g);
                const double mismatch = (out.estimated_symbols - x * symbols.symbols).cwiseAbs().maxCoeff();
                report << v.name << " crosstalk max off-diagonal = " << max_leakage(x)
                       << ", |s_hat - X s| = " << mismatch << '\n';
            }
        }
        for (const auto &r : result.rows)
            doc.row({r.variant, r.noise, std::to_string(r.mode), format_real(r.abs_error.value_or(std::numeric_limits<double>::quiet_NaN()))});
        result.csv = doc.str();
        result.report = report.str();
        return result;
    }

    std::string run_experiment(Experiment e, const RunConfig &config, unsigned threads)
    {
        switch (e)
        {
        case Experiment::error_sweep:
            return run_error_sweep(config, threads);
        case Experiment::gain_vs_phi:
            return run_gain_sweep(config, SweepAxis::phi, threads);
        case Experiment::gain_vs_theta:
            return run_gain_sweep(config, SweepAxis::theta, threads);
        case Experiment::se_vs_phi:
            return run_se_sweep(config, threads);
        case Experiment::demux_demo:
            return run_demux_demo(config).csv;
        }
        return {};
    }
}
