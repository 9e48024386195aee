// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

// Test-only reference computations kept independent of the library's formulas.

#ifndef VORTEX_TESTS_ORACLES_HPP
#define VORTEX_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "vortex/geometry.hpp"

namespace oracle
{
    // Element coordinates rebuilt in long double from the raw parameters.
    struct Coordinates
    {
        long double x, y, z;
    };

    inline Coordinates tx_coordinates(const vortex::LinkGeometry<double> &g, std::size_t n)
    {
        const long double az = 2.0L * std::numbers::pi_v<long double> * n / g.n_tx() + g.offset_alpha_tx();
        return {g.radius_tx() * std::cos(az), g.radius_tx() * std::sin(az), 0.0L};
    }

    inline Coordinates rx_coordinates(const vortex::LinkGeometry<double> &g, std::size_t m)
    {
        const long double az = 2.0L * std::numbers::pi_v<long double> * m / g.n_rx() + g.offset_alpha_rx();
        const long double d = g.center_distance(), phi = g.tilt_phi(), th = g.bearing_theta();
        return {g.radius_rx() * std::cos(az) - d * std::sin(phi) * std::cos(th),
                g.radius_rx() * std::sin(az) - d * std::sin(phi) * std::sin(th), d * std::cos(phi)};
    }

    inline double coordinate_distance(const vortex::LinkGeometry<double> &g, std::size_t m, std::size_t n)
    {
        const auto a = rx_coordinates(g, m), b = tx_coordinates(g, n);
        return double(std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z)));
    }

    inline double coordinate_projected_distance(const vortex::LinkGeometry<double> &g, std::size_t m, std::size_t n)
    {
        const auto a = rx_coordinates(g, m), b = tx_coordinates(g, n);
        return double(std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)));
    }

    inline std::complex<double> spherical_gain(const vortex::LinkGeometry<double> &g, double dist)
    {
        const double amp = g.beta() * g.wavelength() / (4.0 * std::numbers::pi * dist);
        return std::polar(amp, -2.0 * std::numbers::pi * dist / g.wavelength());
    }

    // Random valid geometry with d >= 5 max(r, R).
    inline vortex::LinkParams<double> random_params(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> count(1, 24);
        vortex::LinkParams<double> p;
        p.n_tx = std::size_t(count(rng));
        p.n_rx = std::size_t(count(rng));
        p.radius_tx = 0.01 + 0.5 * unit(rng);
        p.radius_rx = 0.01 + 0.5 * unit(rng);
        p.center_distance = 5.0 * std::max(p.radius_tx, p.radius_rx) * (1.0 + 10.0 * unit(rng));
        p.bearing_theta = 2.0 * std::numbers::pi * unit(rng);
        p.tilt_phi = 0.5 * std::numbers::pi * unit(rng);
        p.offset_alpha_tx = 2.0 * std::numbers::pi * unit(rng);
        p.offset_alpha_rx = 2.0 * std::numbers::pi * unit(rng);
        p.wavelength = 0.01 + 0.2 * unit(rng);
        p.beta = 0.5 + 20.0 * unit(rng);
        return p;
    }

    // Reference link: N = M = 10, r = R = lambda = 0.1 m, d = 1 m, beta = 4 pi.
    inline vortex::LinkParams<double> reference_params(double phi = 0.0, double theta = 0.0)
    {
        vortex::LinkParams<double> p;
        p.tilt_phi = phi;
        p.bearing_theta = theta;
        return p;
    }
}

#endif
