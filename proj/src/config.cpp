// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#include "vortex/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "vortex/cli/csv.hpp"
#include "vortex/errors.hpp"

namespace vortex::cli
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        double parse_real(std::string_view value, std::size_t line, std::string_view key)
        {
            double out = 0;
            const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
            if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
                throw ParseError(line, "key '" + std::string(key) + "': expected a real number (radians for angles), got '" + std::string(value) + "'");
            return out;
        }

        long long parse_integer(std::string_view value, std::size_t line, std::string_view key)
        {
            long long out = 0;
            const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
            if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
                throw ParseError(line, "key '" + std::string(key) + "': expected an integer, got '" + std::string(value) + "'");
            return out;
        }

        std::size_t parse_count(std::string_view value, std::size_t line, std::string_view key)
        {
            const long long v = parse_integer(value, line, key);
            if (v < 1)
                throw ValidationError(std::string(key), "must be a positive integer");
            return static_cast<std::size_t>(v);
        }

        std::uint64_t parse_seed(std::string_view value, std::size_t line)
        {
            std::uint64_t out = 0;
            const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
            if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
                throw ParseError(line, "key 'seed': expected an unsigned 64-bit integer, got '" + std::string(value) + "'");
            return out;
        }

        // Maps LinkGeometry field names onto config keys for error messages.
        std::string config_key(const std::string &field)
        {
            static const std::pair<const char *, const char *> names[] = {
                {"radius_tx", "radius_tx_m"}, {"radius_rx", "radius_rx_m"}, {"center_distance", "distance_m"},
                {"bearing_theta", "theta_rad"}, {"tilt_phi", "phi_rad"}, {"offset_alpha_tx", "alpha_tx_rad"},
                {"offset_alpha_rx", "alpha_rx_rad"}, {"wavelength", "wavelength_m"}};
            for (const auto &[from, to] : names)
                if (field == from)
                    return to;
            return field;
        }

        void assign(RunConfig &cfg, std::string_view section, std::string_view key, std::string_view value, std::size_t line)
        {
            auto &g = cfg.geometry;
            if (section == "geometry")
            {
                if (key == "n_tx")
                    g.n_tx = parse_count(value, line, key);
                else if (key == "n_rx")
                    g.n_rx = parse_count(value, line, key);
                else if (key == "radius_tx_m")
                    g.radius_tx = parse_real(value, line, key);
                else if (key == "radius_rx_m")
                    g.radius_rx = parse_real(value, line, key);
                else if (key == "distance_m")
                    g.center_distance = parse_real(value, line, key);
                else if (key == "theta_rad")
                    g.bearing_theta = parse_real(value, line, key);
                else if (key == "phi_rad")
                    g.tilt_phi = parse_real(value, line, key);
                else if (key == "alpha_tx_rad")
                    g.offset_alpha_tx = parse_real(value, line, key);
                else if (key == "alpha_rx_rad")
                    g.offset_alpha_rx = parse_real(value, line, key);
                else if (key == "wavelength_m")
                    g.wavelength = parse_real(value, line, key);
                else if (key == "beta")
                    g.beta = parse_real(value, line, key);
                else
                    throw ParseError(line, "unknown key '" + std::string(key) + "' in [geometry]");
            }
            else if (section == "budget")
            {
                if (key == "mode_power")
                    cfg.budget.mode_power = parse_real(value, line, key);
                else if (key == "noise_variance")
                    cfg.budget.noise_variance = parse_real(value, line, key);
                else if (key == "seed")
                    cfg.budget.seed = parse_seed(value, line);
                else
                    throw ParseError(line, "unknown key '" + std::string(key) + "' in [budget]");
            }
            else if (section == "sweep")
            {
                if (key == "variable")
                {
                    const auto axis = parse_sweep_axis(value);
                    if (!axis)
                        throw ValidationError("variable", "expected phi, theta, distance or n_tx, got '" + std::string(value) + "'");
                    cfg.sweep.variable = *axis;
                }
                else if (key == "start")
                    cfg.sweep.start = parse_real(value, line, key);
                else if (key == "stop")
                    cfg.sweep.stop = parse_real(value, line, key);
                else if (key == "steps")
                    cfg.sweep.steps = parse_count(value, line, key);
                else
                    throw ParseError(line, "unknown key '" + std::string(key) + "' in [sweep]");
            }
        }
    }

    std::string_view to_string(Experiment e)
    {
        switch (e)
        {
        case Experiment::error_sweep:
            return "error-sweep";
        case Experiment::gain_vs_phi:
            return "gain-vs-phi";
        case Experiment::gain_vs_theta:
            return "gain-vs-theta";
        case Experiment::se_vs_phi:
            return "se-vs-phi";
        case Experiment::demux_demo:
            return "demux-demo";
        }
        return "unknown";
    }

    std::string_view to_string(SweepAxis a)
    {
        switch (a)
        {
        case SweepAxis::phi:
            return "phi";
        case SweepAxis::theta:
            return "theta";
        case SweepAxis::distance:
            return "distance";
        case SweepAxis::n_tx:
            return "n_tx";
        }
        return "unknown";
    }

    std::optional<SweepAxis> parse_sweep_axis(std::string_view name)
    {
        for (auto a : {SweepAxis::phi, SweepAxis::theta, SweepAxis::distance, SweepAxis::n_tx})
            if (to_string(a) == name)
                return a;
        return std::nullopt;
    }

    std::vector<double> SweepConfig::grid() const
    {
        std::vector<double> out(steps);
        if (steps == 1)
        {
            out[0] = start;
            return out;
        }
        const double step = (stop - start) / double(steps - 1);
        for (std::size_t i = 0; i < steps; ++i)
            out[i] = start + step * double(i);
        out.back() = stop;
        return out;
    }

    RunConfig default_run_config(Experiment e)
    {
        RunConfig cfg;
        switch (e)
        {
        case Experiment::error_sweep:
            cfg.sweep = {SweepAxis::n_tx, 4.0, 32.0, 15};
            break;
        case Experiment::gain_vs_phi:
            cfg.sweep = {SweepAxis::phi, 0.0, std::numbers::pi / 2, 91};
            break;
        case Experiment::gain_vs_theta:
            cfg.geometry.tilt_phi = std::numbers::pi / 3;
            cfg.sweep = {SweepAxis::theta, 0.0, 2.0 * std::numbers::pi * 71.0 / 72.0, 72};
            break;
        case Experiment::se_vs_phi:
        case Experiment::demux_demo:
            cfg.sweep = {SweepAxis::phi, 0.0, std::numbers::pi / 2, 181};
            break;
        }
        return cfg;
    }

    void validate(const RunConfig &config)
    {
        try
        {
            (void)LinkGeometry<double>(config.geometry);
        }
        catch (const ValidationError &e)
        {
            throw ValidationError(config_key(e.field()), e.what());
        }
        if (!(config.budget.mode_power >= 0.0) || !std::isfinite(config.budget.mode_power))
            throw ValidationError("mode_power", "must be non-negative and finite");
        if (!(config.budget.noise_variance >= 0.0) || !std::isfinite(config.budget.noise_variance))
            throw ValidationError("noise_variance", "must be non-negative and finite");
        if (config.sweep.steps < 1)
            throw ValidationError("steps", "must be at least 1");
        if (!std::isfinite(config.sweep.start) || !std::isfinite(config.sweep.stop))
            throw ValidationError("start", "sweep bounds must be finite");
        if (config.sweep.start > config.sweep.stop)
            throw ValidationError("start", "must not exceed stop");
    }

    RunConfig parse_config(std::string_view text, const RunConfig &base)
    {
        RunConfig cfg = base;
        std::string section;
        std::set<std::string> seen;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const std::size_t end = text.find('\n', pos);
            const std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
            ++line_no;

            const std::string_view line = trim(raw);
            if (line.empty() || line.front() == '#' || line.front() == ';')
                continue;
            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ParseError(line_no, "unterminated section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (section != "geometry" && section != "budget" && section != "sweep")
                    throw ParseError(line_no, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError(line_no, "expected 'key = value'");
            const std::string_view key = trim(line.substr(0, eq));
            const std::string_view value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ParseError(line_no, "missing key");
            if (section.empty())
                throw ParseError(line_no, "key '" + std::string(key) + "' outside of a section");
            if (value.empty())
                throw ParseError(line_no, "key '" + std::string(key) + "' has no value");
            if (!seen.insert(section + "." + std::string(key)).second)
                throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
            assign(cfg, section, key, value, line_no);
        }
        validate(cfg);
        // Stored angles are the canonical (normalized) values.
        const LinkGeometry<double> normalized(cfg.geometry);
        cfg.geometry = normalized.params();
        return cfg;
    }

    void apply_grid_spec(SweepConfig &sweep, std::string_view spec)
    {
        const auto first = spec.find(':');
        const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
        if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos)
            throw ParseError(1, "grid must be START:STOP:STEPS, got '" + std::string(spec) + "'");
        sweep.start = parse_real(trim(spec.substr(0, first)), 1, "start");
        sweep.stop = parse_real(trim(spec.substr(first + 1, second - first - 1)), 1, "stop");
        sweep.steps = parse_count(trim(spec.substr(second + 1)), 1, "steps");
        if (sweep.start > sweep.stop)
            throw ValidationError("start", "must not exceed stop");
    }

    std::string to_config_text(const RunConfig &config)
    {
        const auto &g = config.geometry;
        std::ostringstream out;
        out << "[geometry]\n"
            << "n_tx = " << g.n_tx << '\n'
            << "n_rx = " << g.n_rx << '\n'
            << "radius_tx_m = " << format_roundtrip(g.radius_tx) << '\n'
            << "radius_rx_m = " << format_roundtrip(g.radius_rx) << '\n'
            << "distance_m = " << format_roundtrip(g.center_distance) << '\n'
            << "theta_rad = " << format_roundtrip(g.bearing_theta) << '\n'
            << "phi_rad = " << format_roundtrip(g.tilt_phi) << '\n'
            << "alpha_tx_rad = " << format_roundtrip(g.offset_alpha_tx) << '\n'
            << "alpha_rx_rad = " << format_roundtrip(g.offset_alpha_rx) << '\n'
            << "wavelength_m = " << format_roundtrip(g.wavelength) << '\n'
            << "beta = " << format_roundtrip(g.beta) << '\n'
            << "[budget]\n"
            << "mode_power = " << format_roundtrip(config.budget.mode_power) << '\n'
            << "noise_variance = " << format_roundtrip(config.budget.noise_variance) << '\n'
            << "seed = " << config.budget.seed << '\n'
            << "[sweep]\n"
            << "variable = " << to_string(config.sweep.variable) << '\n'
            << "start = " << format_roundtrip(config.sweep.start) << '\n'
            << "stop = " << format_roundtrip(config.sweep.stop) << '\n'
            << "steps = " << config.sweep.steps << '\n';
        return out.str();
    }
}
