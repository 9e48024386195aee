// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_CHANNEL_HPP
#define VORTEX_CHANNEL_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>

#include "vortex/errors.hpp"
#include "vortex/geometry.hpp"
#include "vortex/specfun.hpp"

namespace vortex
{
    template <typename Scalar>
    using Complex = std::complex<Scalar>;

    template <typename Scalar>
    using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

    template <typename Scalar>
    using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    enum class ChannelVariant
    {
        exact,   // spherical-wave gain with the true element distance
        farfield // first-order phase expansion, common amplitude
    };

    // Element-to-element gains h_mn, M x N.
    template <typename Scalar = double>
    struct ChannelMatrix
    {
        CMatrix<Scalar> entries;
        ChannelVariant variant = ChannelVariant::exact;
    };

    // Per-mode gains h~_ml, M x L; column j carries mode modes[j].
    template <typename Scalar = double>
    struct ModeChannelMatrix
    {
        CMatrix<Scalar> entries;
        ModeIndexSet modes{1};

        Complex<Scalar> operator()(std::size_t m, int l) const
        {
            return entries(Eigen::Index(m), Eigen::Index(modes.index_of(l)));
        }
    };

    // Factorisation h~_ml = h exp(j (psi_m + a_R - zeta_m) l) C_{m,l}.
    template <typename Scalar = double>
    struct ModeGainFactors
    {
        Complex<Scalar> h;            // common mode scalar
        CVector<Scalar> a_factor;     // A_m, length M
        RVector<Scalar> b_factor;     // B_m >= 0, length M
        CMatrix<Scalar> c_factor;     // C_{m,l}, M x L
        ModeIndexSet modes{1};
    };

    inline constexpr double case_tolerance = 1e-12;

    // Common far-field amplitude beta lambda / (4 pi sqrt(d^2 + r^2 + R^2)).
    template <typename Scalar>
    Scalar farfield_amplitude(const LinkGeometry<Scalar> &g)
    {
        return g.beta() * g.wavelength() / (Scalar(4) * std::numbers::pi_v<Scalar> * g.reference_distance());
    }

    template <typename Scalar>
    Complex<Scalar> exact_channel_gain(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
    {
        const Scalar dist = exact_distance(g, m, n);
        const Scalar amp = g.beta() * g.wavelength() / (Scalar(4) * std::numbers::pi_v<Scalar> * dist);
        return std::polar(amp, -two_pi<Scalar> * dist / g.wavelength());
    }

    // Mode scalar h = sqrt(N) beta lambda exp(-j 2 pi S / lambda) / (4 pi S), S = sqrt(d^2 + r^2 + R^2).
    template <typename Scalar>
    Complex<Scalar> mode_scalar(const LinkGeometry<Scalar> &g)
    {
        const Scalar amp = std::sqrt(Scalar(g.n_tx())) * farfield_amplitude(g);
        return std::polar(amp, -two_pi<Scalar> * g.reference_distance() / g.wavelength());
    }

    namespace detail
    {
        // Phase 2 pi R d sin(phi) cos(psi_m + a_R - theta) / (lambda S) shared by A_m and C_{m,l}.
        template <typename Scalar>
        Scalar lateral_phase(const LinkGeometry<Scalar> &g, std::size_t m)
        {
            const Scalar a = g.rx_azimuth(m) - g.bearing_theta();
            return two_pi<Scalar> * g.radius_rx() * g.lateral_offset() * std::cos(a) / (g.wavelength() * g.reference_distance());
        }
    }

    template <typename Scalar>
    Complex<Scalar> a_factor(const LinkGeometry<Scalar> &g, std::size_t m)
    {
        g.check_rx(m);
        const Scalar phase = -two_pi<Scalar> * g.reference_distance() / g.wavelength() + detail::lateral_phase(g, m);
        return std::polar(farfield_amplitude(g), phase);
    }

    template <typename Scalar>
    Scalar b_factor(const LinkGeometry<Scalar> &g, std::size_t m)
    {
        const auto t = zeta_terms(g, m);
        return two_pi<Scalar> * g.radius_tx() * t.denominator / (g.wavelength() * g.reference_distance());
    }

    // C_{m,l} = exp(j lateral phase) J_l(-B_m). The Bessel argument carries the sign
    // of the expansion phase exp(+j B_m sin(.)), so that the closed form matches the
    // finite DFT of the far-field gains.
    template <typename Scalar>
    Complex<Scalar> c_factor(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        g.check_rx(m);
        return std::polar(Scalar(1), detail::lateral_phase(g, m)) * bessel_j(l, -b_factor(g, m));
    }

    // exp(j (psi_m + a_R - zeta_m) l)
    template <typename Scalar>
    Complex<Scalar> mode_phase(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        return std::polar(Scalar(1), (g.rx_azimuth(m) - zeta(g, m)) * Scalar(l));
    }

    template <typename Scalar>
    Complex<Scalar> farfield_channel_gain(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
    {
        g.check_tx(n);
        const Scalar arg = g.tx_azimuth(n) - g.rx_azimuth(m) + zeta(g, m);
        return a_factor(g, m) * std::polar(Scalar(1), b_factor(g, m) * std::sin(arg));
    }

    template <typename Scalar>
    ChannelMatrix<Scalar> channel_matrix(const LinkGeometry<Scalar> &g, ChannelVariant variant)
    {
        ChannelMatrix<Scalar> out{CMatrix<Scalar>(Eigen::Index(g.n_rx()), Eigen::Index(g.n_tx())), variant};
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            if (variant == ChannelVariant::exact)
            {
                for (std::size_t n = 0; n < g.n_tx(); ++n)
                    out.entries(Eigen::Index(m), Eigen::Index(n)) = exact_channel_gain(g, m, n);
                continue;
            }
            const Complex<Scalar> a = a_factor(g, m);
            const Scalar b = b_factor(g, m);
            const Scalar z = zeta(g, m);
            for (std::size_t n = 0; n < g.n_tx(); ++n)
            {
                const Scalar arg = g.tx_azimuth(n) - g.rx_azimuth(m) + z;
                out.entries(Eigen::Index(m), Eigen::Index(n)) = a * std::polar(Scalar(1), b * std::sin(arg));
            }
        }
        return out;
    }

    // N x L matrix of transmit weights exp(j (phi_n + alpha_r) l) / sqrt(N).
    template <typename Scalar>
    CMatrix<Scalar> mode_weights(const LinkGeometry<Scalar> &g)
    {
        const ModeIndexSet modes = mode_index_set(g);
        const Scalar norm = Scalar(1) / std::sqrt(Scalar(g.n_tx()));
        CMatrix<Scalar> w(Eigen::Index(g.n_tx()), Eigen::Index(modes.size()));
        for (std::size_t n = 0; n < g.n_tx(); ++n)
            for (std::size_t j = 0; j < modes.size(); ++j)
                w(Eigen::Index(n), Eigen::Index(j)) = std::polar(norm, g.tx_azimuth(n) * Scalar(modes[j]));
        return w;
    }

    // Finite-sum mode gain (1/sqrt N) sum_n h_mn exp(j (phi_n + alpha_r) l) over the far-field gains.
    template <typename Scalar>
    Complex<Scalar> mode_gain_direct(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        const Scalar norm = Scalar(1) / std::sqrt(Scalar(g.n_tx()));
        Complex<Scalar> sum(0);
        for (std::size_t n = 0; n < g.n_tx(); ++n)
            sum += farfield_channel_gain(g, m, n) * std::polar(norm, g.tx_azimuth(n) * Scalar(l));
        return sum;
    }

    template <typename Scalar>
    Complex<Scalar> mode_gain_closed(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        return mode_scalar(g) * mode_phase(g, m, l) * c_factor(g, m, l);
    }

    // Coaxial arrays (phi = 0): zeta_m = pi/2 and B_m = 2 pi r R / (lambda S) for every m.
    template <typename Scalar>
    Complex<Scalar> mode_gain_aligned(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        if (std::abs(g.tilt_phi()) > Scalar(case_tolerance))
            throw CaseMismatch("aligned mode gain requires tilt_phi = 0");
        g.check_rx(m);
        const Scalar b = two_pi<Scalar> * g.radius_tx() * g.radius_rx() / (g.wavelength() * g.reference_distance());
        const Scalar phase = (g.rx_azimuth(m) + std::numbers::pi_v<Scalar> / Scalar(2)) * Scalar(l);
        return mode_scalar(g) * bessel_j(l, b) * std::polar(Scalar(1), phase);
    }

    template <typename Scalar>
    struct CoplanarFactors
    {
        Scalar b;
        Complex<Scalar> c;
    };

    // Both arrays in the transmit plane (phi = pi/2) with theta = a_R.
    template <typename Scalar>
    CoplanarFactors<Scalar> coplanar_factors(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
        if (std::abs(g.tilt_phi() - half_pi) > Scalar(case_tolerance))
            throw CaseMismatch("coplanar factors require tilt_phi = pi/2");
        const Scalar dtheta = wrap_two_pi(g.bearing_theta() - g.offset_alpha_rx());
        if (std::min(dtheta, two_pi<Scalar> - dtheta) > Scalar(case_tolerance))
            throw CaseMismatch("coplanar factors require bearing_theta = offset_alpha_rx");
        g.check_rx(m);

        const Scalar r = g.radius_tx(), R = g.radius_rx(), d = g.center_distance();
        const Scalar scale = g.wavelength() * g.reference_distance();
        const Scalar cos_psi = std::cos(g.rx_basic_angle(m));
        const Scalar b = two_pi<Scalar> * r * std::sqrt(std::max(R * R + d * d - Scalar(2) * R * d * cos_psi, Scalar(0))) / scale;
        const Complex<Scalar> c = std::polar(Scalar(1), two_pi<Scalar> * R * d * cos_psi / scale) * bessel_j(l, -b);
        return {b, c};
    }

    template <typename Scalar>
    ModeGainFactors<Scalar> mode_gain_factors(const LinkGeometry<Scalar> &g)
    {
        ModeGainFactors<Scalar> f;
        f.modes = mode_index_set(g);
        f.h = mode_scalar(g);
        const auto M = Eigen::Index(g.n_rx());
        f.a_factor.resize(M);
        f.b_factor.resize(M);
        f.c_factor.resize(M, Eigen::Index(f.modes.size()));
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            const auto i = Eigen::Index(m);
            f.a_factor(i) = a_factor(g, m);
            f.b_factor(i) = b_factor(g, m);
            const Complex<Scalar> lateral = std::polar(Scalar(1), detail::lateral_phase(g, m));
            for (std::size_t j = 0; j < f.modes.size(); ++j)
                f.c_factor(i, Eigen::Index(j)) = lateral * bessel_j(f.modes[j], -f.b_factor(i));
        }
        return f;
    }

    template <typename Scalar>
    ModeChannelMatrix<Scalar> mode_channel_closed(const LinkGeometry<Scalar> &g)
    {
        const auto f = mode_gain_factors(g);
        ModeChannelMatrix<Scalar> out{CMatrix<Scalar>(f.c_factor.rows(), f.c_factor.cols()), f.modes};
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            const Scalar turn = g.rx_azimuth(m) - zeta(g, m);
            for (std::size_t j = 0; j < f.modes.size(); ++j)
                out.entries(Eigen::Index(m), Eigen::Index(j)) =
                    f.h * std::polar(Scalar(1), turn * Scalar(f.modes[j])) * f.c_factor(Eigen::Index(m), Eigen::Index(j));
        }
        return out;
    }

    // Mode gains of an arbitrary element channel: H W with W from mode_weights.
    template <typename Scalar>
    ModeChannelMatrix<Scalar> mode_channel(const LinkGeometry<Scalar> &g, const ChannelMatrix<Scalar> &h)
    {
        return {h.entries * mode_weights(g), mode_index_set(g)};
    }

    template <typename Scalar>
    ModeChannelMatrix<Scalar> mode_channel_direct(const LinkGeometry<Scalar> &g)
    {
        return mode_channel(g, channel_matrix(g, ChannelVariant::farfield));
    }

    inline constexpr double error_magnitude_floor = 1e-300;

    // log10 |closed - direct| for one receive element and mode.
    template <typename Scalar>
    Scalar approximation_error(const LinkGeometry<Scalar> &g, std::size_t m, int l)
    {
        const Scalar diff = std::abs(mode_gain_closed(g, m, l) - mode_gain_direct(g, m, l));
        const Scalar floor = std::max(Scalar(error_magnitude_floor), std::numeric_limits<Scalar>::min());
        return std::log10(std::max(diff, floor));
    }

    // Worst case over receive elements.
    template <typename Scalar>
    Scalar max_approximation_error(const LinkGeometry<Scalar> &g, int l)
    {
        Scalar worst = -std::numeric_limits<Scalar>::infinity();
        for (std::size_t m = 0; m < g.n_rx(); ++m)
            worst = std::max(worst, approximation_error(g, m, l));
        return worst;
    }
}

#endif
