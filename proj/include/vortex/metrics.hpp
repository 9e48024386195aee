// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_METRICS_HPP
#define VORTEX_METRICS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vortex/channel.hpp"
#include "vortex/errors.hpp"
#include "vortex/geometry.hpp"
#include "vortex/parallel.hpp"
#include "vortex/transceiver.hpp"

namespace vortex
{
    template <typename Scalar = double>
    struct LinkBudget
    {
        RVector<Scalar> mode_powers; // |s_l|^2 per mode
        NoiseModel<Scalar> noise;

        static LinkBudget uniform(const LinkGeometry<Scalar> &g, Scalar mode_power, Scalar noise_variance)
        {
            if (!(mode_power >= Scalar(0)))
                throw ValidationError("mode_power", "must be non-negative");
            return {RVector<Scalar>::Constant(Eigen::Index(mode_index_set(g).size()), mode_power),
                    NoiseModel<Scalar>::uniform(g.n_rx(), noise_variance)};
        }
    };

    // Variance of the noise term left in y_{l0}: sum_m sigma_m^2 / |C_{m,l0}|^2.
    template <typename Scalar>
    Scalar aggregate_noise_variance(const LinkGeometry<Scalar> &g, int l0, const NoiseModel<Scalar> &noise)
    {
        if (std::size_t(noise.variances.size()) != g.n_rx())
            throw LengthMismatch(g.n_rx(), std::size_t(noise.variances.size()));
        Scalar sum(0);
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            const Scalar c = std::abs(c_factor(g, m, l0));
            if (c < Scalar(bessel_zero_guard))
                throw ModeUnobservable(m, l0);
            sum += noise.variances(Eigen::Index(m)) / (c * c);
        }
        return sum;
    }

    // sum_l log2(1 + M^2 |h|^2 |s_l|^2 / aggregate_noise_variance(l)) in bit/s/Hz.
    template <typename Scalar>
    Scalar spectrum_efficiency(const LinkGeometry<Scalar> &g, const LinkBudget<Scalar> &budget)
    {
        const auto modes = mode_index_set(g);
        if (std::size_t(budget.mode_powers.size()) != modes.size())
            throw LengthMismatch(modes.size(), std::size_t(budget.mode_powers.size()));
        const Scalar h2 = std::norm(mode_scalar(g));
        const Scalar M = Scalar(g.n_rx());
        Scalar total(0);
        for (std::size_t j = 0; j < modes.size(); ++j)
        {
            const Scalar noise = aggregate_noise_variance(g, modes[j], budget.noise);
            const Scalar power = budget.mode_powers(Eigen::Index(j));
            if (power == Scalar(0))
                continue;
            total += std::log2(Scalar(1) + M * M * h2 * power / noise);
        }
        return total;
    }

    enum class SweepVariable
    {
        phi,
        theta,
        distance
    };

    template <typename Scalar>
    LinkParams<Scalar> with_variable(LinkParams<Scalar> p, SweepVariable variable, Scalar value)
    {
        switch (variable)
        {
        case SweepVariable::phi:
            p.tilt_phi = value;
            break;
        case SweepVariable::theta:
            p.bearing_theta = value;
            break;
        case SweepVariable::distance:
            p.center_distance = value;
            break;
        }
        return p;
    }

    template <typename Scalar = double>
    struct SweepPoint
    {
        Scalar value;
        std::optional<Scalar> efficiency; // empty marks a gap
        std::string gap_reason;
    };

    // Spectrum efficiency over a grid of one geometry variable. Grid points where a
    // mode is unobservable or zeta is undefined become gaps.
    template <typename Scalar>
    std::vector<SweepPoint<Scalar>> se_sweep(const LinkParams<Scalar> &base, SweepVariable variable,
                                             std::span<const Scalar> grid, const LinkBudget<Scalar> &budget,
                                             unsigned threads = 1)
    {
        if (grid.empty())
            throw std::invalid_argument("se_sweep: empty grid");
        std::vector<LinkGeometry<Scalar>> geometries;
        geometries.reserve(grid.size());
        for (const Scalar v : grid)
            geometries.emplace_back(with_variable(base, variable, v));

        std::vector<SweepPoint<Scalar>> out(grid.size());
        parallel_for(grid.size(), threads, [&](std::size_t i)
                     {
            out[i].value = grid[i];
            try
            {
                out[i].efficiency = spectrum_efficiency(geometries[i], budget);
            }
            catch (const ModeUnobservable &e)
            {
                out[i].gap_reason = e.what();
            }
            catch (const DegenerateGeometry &e)
            {
                out[i].gap_reason = e.what();
            } });
        return out;
    }
}

#endif
