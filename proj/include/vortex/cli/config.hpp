// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_CLI_CONFIG_HPP
#define VORTEX_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vortex/geometry.hpp"

namespace vortex::cli
{
    enum class Experiment
    {
        error_sweep,
        gain_vs_phi,
        gain_vs_theta,
        se_vs_phi,
        demux_demo
    };

    enum class SweepAxis
    {
        phi,
        theta,
        distance,
        n_tx
    };

    std::string_view to_string(Experiment e);
    std::string_view to_string(SweepAxis a);
    std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

    struct BudgetConfig
    {
        double mode_power = 1.0;      // |s_l|^2, applied to every mode
        double noise_variance = 0.01; // sigma_m^2, applied to every receive element
        std::uint64_t seed = 1;

        bool operator==(const BudgetConfig &) const = default;
    };

    // Inclusive linear grid of `steps` points from start to stop.
    struct SweepConfig
    {
        SweepAxis variable = SweepAxis::phi;
        double start = 0.0;
        double stop = std::numbers::pi / 2;
        std::size_t steps = 181;

        std::vector<double> grid() const;
        bool operator==(const SweepConfig &) const = default;
    };

    struct RunConfig
    {
        LinkParams<double> geometry;
        BudgetConfig budget;
        SweepConfig sweep;
        std::string output_path; // set from the command line, never serialized

        bool operator==(const RunConfig &) const = default;
    };

    // Reference settings reproducing each experiment when no config is given.
    RunConfig default_run_config(Experiment e);

    // Parses the flat [geometry]/[budget]/[sweep] key-value format. Keys absent
    // from `text` keep their value from `base`. Throws ParseError for malformed
    // lines or unknown keys and ValidationError for out-of-range values.
    RunConfig parse_config(std::string_view text, const RunConfig &base = RunConfig{});

    // Throws ValidationError if any field breaks its invariant.
    void validate(const RunConfig &config);

    // Parses "START:STOP:STEPS" into the sweep's grid fields.
    void apply_grid_spec(SweepConfig &sweep, std::string_view spec);

    // Emits every field in the format accepted by parse_config.
    std::string to_config_text(const RunConfig &config);
}

#endif
