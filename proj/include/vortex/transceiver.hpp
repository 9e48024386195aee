// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_TRANSCEIVER_HPP
#define VORTEX_TRANSCEIVER_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <type_traits>

#include "vortex/channel.hpp"
#include "vortex/errors.hpp"
#include "vortex/geometry.hpp"

namespace vortex
{
    // One complex symbol per OAM mode, ordered like ModeIndexSet.
    template <typename Scalar = double>
    struct ModeSymbolVector
    {
        CVector<Scalar> symbols;
    };

    enum class ArraySide
    {
        tx,
        rx
    };

    template <typename Scalar = double>
    struct ElementSignalVector
    {
        CVector<Scalar> samples;
        ArraySide side = ArraySide::tx;
    };

    // Independent circular complex Gaussian noise per receive element.
    template <typename Scalar = double>
    struct NoiseModel
    {
        RVector<Scalar> variances; // sigma_m^2, length M
        std::uint64_t seed = 0;

        static NoiseModel uniform(std::size_t n_rx, Scalar variance, std::uint64_t seed = 0)
        {
            if (!(variance >= Scalar(0)))
                throw ValidationError("noise_variance", "must be non-negative");
            return {RVector<Scalar>::Constant(Eigen::Index(n_rx), variance), seed};
        }
    };

    template <typename Scalar = double>
    struct DemuxOutput
    {
        CVector<Scalar> per_mode;          // y_{l0}
        CMatrix<Scalar> per_element_terms; // y_{m,l0}, M x L
        CVector<Scalar> estimated_symbols; // y_{l0} / (M h)
        ModeIndexSet modes{1};
    };

    namespace detail
    {
        constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        // Uniform in (0, 1) addressed by (seed, stream, index, lane).
        inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, std::uint64_t lane) noexcept
        {
            std::uint64_t h = splitmix64(seed);
            h = splitmix64(h ^ stream);
            h = splitmix64(h ^ (index * 2 + lane));
            return (double(h >> 11) + 0.5) * 0x1.0p-53;
        }
    }

    // Unit-variance circular complex Gaussian, a pure function of (seed, stream, index).
    template <typename Scalar = double>
    Complex<Scalar> standard_complex_gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        const double u1 = detail::counter_uniform(seed, stream, index, 0);
        const double u2 = detail::counter_uniform(seed, stream, index, 1);
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {Scalar(radius * std::cos(angle)), Scalar(radius * std::sin(angle))};
    }

    // Noise sample z_m of the given trial.
    template <typename Scalar>
    Complex<Scalar> noise_sample(const NoiseModel<Scalar> &noise, std::size_t element, std::uint64_t trial)
    {
        return std::sqrt(noise.variances(Eigen::Index(element))) * standard_complex_gaussian<Scalar>(noise.seed, trial, element);
    }

    // x_n = (1/sqrt N) sum_l s_l exp(j (phi_n + alpha_r) l)
    template <typename Scalar>
    ElementSignalVector<Scalar> synthesize_transmit(const ModeSymbolVector<Scalar> &symbols, const LinkGeometry<Scalar> &g)
    {
        const auto modes = mode_index_set(g);
        if (std::size_t(symbols.symbols.size()) != modes.size())
            throw LengthMismatch(modes.size(), std::size_t(symbols.symbols.size()));
        return {mode_weights(g) * symbols.symbols, ArraySide::tx};
    }

    namespace detail
    {
        template <typename Scalar>
        void add_noise(CVector<Scalar> &y, const std::optional<NoiseModel<Scalar>> &noise, std::uint64_t trial)
        {
            if (!noise)
                return;
            if (noise->variances.size() != y.size())
                throw LengthMismatch(std::size_t(y.size()), std::size_t(noise->variances.size()));
            for (Eigen::Index m = 0; m < y.size(); ++m)
                y(m) += noise_sample(*noise, std::size_t(m), trial);
        }
    }

    // y_m = sum_n h_mn x_n + z_m
    template <typename Scalar>
    ElementSignalVector<Scalar> propagate(const ElementSignalVector<Scalar> &tx, const ChannelMatrix<Scalar> &channel,
                                          const std::optional<NoiseModel<std::type_identity_t<Scalar>>> &noise = std::nullopt, std::uint64_t trial = 0)
    {
        if (tx.samples.size() != channel.entries.cols())
            throw LengthMismatch(std::size_t(channel.entries.cols()), std::size_t(tx.samples.size()));
        ElementSignalVector<Scalar> rx{channel.entries * tx.samples, ArraySide::rx};
        detail::add_noise(rx.samples, noise, trial);
        return rx;
    }

    // y_m = sum_l h~_ml s_l + z_m, i.e. propagation through a per-mode channel model.
    template <typename Scalar>
    ElementSignalVector<Scalar> propagate_modes(const ModeSymbolVector<Scalar> &symbols, const ModeChannelMatrix<Scalar> &channel,
                                                const std::optional<NoiseModel<std::type_identity_t<Scalar>>> &noise = std::nullopt, std::uint64_t trial = 0)
    {
        if (symbols.symbols.size() != channel.entries.cols())
            throw LengthMismatch(std::size_t(channel.entries.cols()), std::size_t(symbols.symbols.size()));
        ElementSignalVector<Scalar> rx{channel.entries * symbols.symbols, ArraySide::rx};
        detail::add_noise(rx.samples, noise, trial);
        return rx;
    }

    inline constexpr double bessel_zero_guard = 1e-12;

    // Weights C_{m,l0}^{-1} exp(-j (psi_m + a_R - zeta_m) l0) for one mode, length M.
    template <typename Scalar>
    CVector<Scalar> demux_weight_column(const LinkGeometry<Scalar> &g, int l0)
    {
        CVector<Scalar> w(Eigen::Index(g.n_rx()));
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            const Complex<Scalar> c = c_factor(g, m, l0);
            if (std::abs(c) < Scalar(bessel_zero_guard))
                throw ModeUnobservable(m, l0);
            const Scalar turn = g.rx_azimuth(m) - zeta(g, m);
            w(Eigen::Index(m)) = std::polar(Scalar(1), -turn * Scalar(l0)) / c;
        }
        return w;
    }

    // All decomposition weights, M x L.
    template <typename Scalar>
    CMatrix<Scalar> demux_weights(const LinkGeometry<Scalar> &g)
    {
        const auto modes = mode_index_set(g);
        CMatrix<Scalar> w(Eigen::Index(g.n_rx()), Eigen::Index(modes.size()));
        for (std::size_t j = 0; j < modes.size(); ++j)
            w.col(Eigen::Index(j)) = demux_weight_column(g, modes[j]);
        return w;
    }

    template <typename Scalar>
    DemuxOutput<Scalar> demultiplex(const ElementSignalVector<Scalar> &rx, const LinkGeometry<Scalar> &g)
    {
        if (std::size_t(rx.samples.size()) != g.n_rx())
            throw LengthMismatch(g.n_rx(), std::size_t(rx.samples.size()));
        const CMatrix<Scalar> w = demux_weights(g);
        DemuxOutput<Scalar> out;
        out.modes = mode_index_set(g);
        out.per_element_terms = rx.samples.asDiagonal() * w;
        out.per_mode = out.per_element_terms.colwise().sum().transpose();
        out.estimated_symbols = out.per_mode / (Scalar(g.n_rx()) * mode_scalar(g));
        return out;
    }

    // Maps transmitted symbols to noiseless estimates: s_hat = X s, with
    // X(l0, l) = (1/(M h)) sum_m h~_ml C_{m,l0}^{-1} exp(-j (psi_m + a_R - zeta_m) l0).
    template <typename Scalar>
    CMatrix<Scalar> crosstalk_matrix(const LinkGeometry<Scalar> &g, const ModeChannelMatrix<Scalar> &channel)
    {
        const CMatrix<Scalar> w = demux_weights(g);
        if (channel.entries.rows() != w.rows() || channel.entries.cols() != w.cols())
            throw LengthMismatch(std::size_t(w.size()), std::size_t(channel.entries.size()));
        return (w.transpose() * channel.entries) / (Scalar(g.n_rx()) * mode_scalar(g));
    }

    // Crosstalk under the closed-form mode channel.
    template <typename Scalar>
    CMatrix<Scalar> crosstalk_matrix(const LinkGeometry<Scalar> &g)
    {
        return crosstalk_matrix(g, mode_channel_closed(g));
    }

    // Largest off-diagonal magnitude.
    template <typename Scalar>
    Scalar max_leakage(const CMatrix<Scalar> &crosstalk)
    {
        Scalar worst(0);
        for (Eigen::Index i = 0; i < crosstalk.rows(); ++i)
            for (Eigen::Index j = 0; j < crosstalk.cols(); ++j)
                if (i != j)
                    worst = std::max(worst, std::abs(crosstalk(i, j)));
        return worst;
    }
}

#endif
