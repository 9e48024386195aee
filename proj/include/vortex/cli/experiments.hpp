// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_CLI_EXPERIMENTS_HPP
#define VORTEX_CLI_EXPERIMENTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vortex/cli/config.hpp"

namespace vortex::cli
{
    inline constexpr const char *tool_version = "vortex-uca 1.0.0";

    // Modes 0..8 are reported by the error sweep.
    inline constexpr int error_sweep_max_mode = 8;

    struct ErrorRow
    {
        std::size_t n_elements;
        int mode;
        double log10_error; // max over receive elements
    };

    struct ErrorSweepResult
    {
        std::vector<ErrorRow> rows;
        std::vector<std::string> exclusions;
    };

    ErrorSweepResult error_sweep(const RunConfig &config, unsigned threads = 1);
    std::string run_error_sweep(const RunConfig &config, unsigned threads = 1);

    struct GainRow
    {
        double angle;
        std::size_t element; // 1-based receive element
        int mode;
        std::optional<double> gain; // |h~_ml|, empty at degenerate points
    };

    // Receive elements reported by the gain sweeps (1-based).
    inline constexpr std::size_t gain_sweep_elements = 4;

    std::vector<GainRow> gain_sweep(const RunConfig &config, SweepAxis axis, unsigned threads = 1);
    std::string run_gain_sweep(const RunConfig &config, SweepAxis axis, unsigned threads = 1);

    std::string run_se_sweep(const RunConfig &config, unsigned threads = 1);

    struct DemoRow
    {
        std::string variant; // model | farfield | exact
        std::string noise;   // none | awgn
        int mode;
        std::optional<double> abs_error; // |s_hat - s|, empty when unobservable
    };

    struct DemoResult
    {
        std::vector<DemoRow> rows;
        std::string report;
        std::string csv;
    };

    DemoResult run_demux_demo(const RunConfig &config);

    // Runs `e` and returns the CSV text.
    std::string run_experiment(Experiment e, const RunConfig &config, unsigned threads = 1);
}

#endif
