// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_GEOMETRY_HPP
#define VORTEX_GEOMETRY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortex/errors.hpp"

namespace vortex
{
    template <typename Scalar>
    using Matrix3X = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

    template <typename Scalar>
    inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

    // Raw link parameters as supplied by a user. Defaults are the reference
    // setup: 10-element arrays, r = R = lambda = 0.1 m, d = 10 lambda, beta = 4 pi.
    template <typename Scalar = double>
    struct LinkParams
    {
        std::size_t n_tx = 10;               // N
        std::size_t n_rx = 10;               // M
        Scalar radius_tx = Scalar(0.1);      // r [m]
        Scalar radius_rx = Scalar(0.1);      // R [m]
        Scalar center_distance = Scalar(1);  // d [m], center to center
        Scalar bearing_theta = Scalar(0);    // theta [rad], azimuth of the center offset
        Scalar tilt_phi = Scalar(0);         // phi [rad], angle between z-axis and the center line
        Scalar offset_alpha_tx = Scalar(0);  // alpha_r [rad], rotation of tx element 0
        Scalar offset_alpha_rx = Scalar(0);  // a_R [rad], rotation of rx element 0
        Scalar wavelength = Scalar(0.1);     // lambda [m]
        Scalar beta = Scalar(4) * std::numbers::pi_v<Scalar>;

        bool operator==(const LinkParams &) const = default;
    };

    // Wraps an angle into [0, 2 pi).
    template <typename Scalar>
    Scalar wrap_two_pi(Scalar angle)
    {
        Scalar out = std::fmod(angle, two_pi<Scalar>);
        if (out < Scalar(0))
            out += two_pi<Scalar>;
        if (out >= two_pi<Scalar>)
            out = Scalar(0);
        return out;
    }

    // Validated, normalized geometry of a pair of parallel uniform circular arrays.
    //
    // The transmit array lies in the plane z = 0 centred at the origin. The receive
    // array lies in z = d cos(phi) with its centre displaced by -d sin(phi) along the
    // bearing theta, which is the placement implied by the element-distance formula.
    // Elements are indexed from 0; element n of the transmit array sits at azimuth
    // 2 pi n / N + alpha_r.
    template <typename Scalar = double>
    class LinkGeometry
    {
    public:
        using scalar_type = Scalar;

        LinkGeometry() : LinkGeometry(LinkParams<Scalar>{}) {}

        explicit LinkGeometry(const LinkParams<Scalar> &p) : p_(p)
        {
            if (p_.n_tx < 1)
                throw ValidationError("n_tx", "must be at least 1");
            if (p_.n_rx < 1)
                throw ValidationError("n_rx", "must be at least 1");
            require_positive("radius_tx", p_.radius_tx);
            require_positive("radius_rx", p_.radius_rx);
            require_positive("center_distance", p_.center_distance);
            require_positive("wavelength", p_.wavelength);
            require_positive("beta", p_.beta);
            require_finite("bearing_theta", p_.bearing_theta);
            require_finite("tilt_phi", p_.tilt_phi);
            require_finite("offset_alpha_tx", p_.offset_alpha_tx);
            require_finite("offset_alpha_rx", p_.offset_alpha_rx);

            const Scalar slack = Scalar(1e-12);
            const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
            if (p_.tilt_phi < -slack || p_.tilt_phi > half_pi + slack)
                throw ValidationError("tilt_phi", "must lie in [0, pi/2]");
            p_.tilt_phi = std::clamp(p_.tilt_phi, Scalar(0), half_pi);

            p_.bearing_theta = wrap_two_pi(p_.bearing_theta);
            p_.offset_alpha_tx = wrap_two_pi(p_.offset_alpha_tx);
            p_.offset_alpha_rx = wrap_two_pi(p_.offset_alpha_rx);
        }

        const LinkParams<Scalar> &params() const noexcept { return p_; }

        std::size_t n_tx() const noexcept { return p_.n_tx; }
        std::size_t n_rx() const noexcept { return p_.n_rx; }
        Scalar radius_tx() const noexcept { return p_.radius_tx; }
        Scalar radius_rx() const noexcept { return p_.radius_rx; }
        Scalar center_distance() const noexcept { return p_.center_distance; }
        Scalar bearing_theta() const noexcept { return p_.bearing_theta; }
        Scalar tilt_phi() const noexcept { return p_.tilt_phi; }
        Scalar offset_alpha_tx() const noexcept { return p_.offset_alpha_tx; }
        Scalar offset_alpha_rx() const noexcept { return p_.offset_alpha_rx; }
        Scalar wavelength() const noexcept { return p_.wavelength; }
        Scalar beta() const noexcept { return p_.beta; }

        // Separation of the two array planes, d cos(phi).
        Scalar plane_separation() const { return p_.center_distance * std::cos(p_.tilt_phi); }

        // In-plane offset of the receive centre, d sin(phi).
        Scalar lateral_offset() const { return p_.center_distance * std::sin(p_.tilt_phi); }

        // sqrt(d^2 + r^2 + R^2), the far-field reference distance.
        Scalar reference_distance() const
        {
            const Scalar d = p_.center_distance, r = p_.radius_tx, R = p_.radius_rx;
            return std::sqrt(d * d + r * r + R * R);
        }

        Scalar tx_basic_angle(std::size_t n) const { return two_pi<Scalar> * Scalar(n) / Scalar(p_.n_tx); }
        Scalar rx_basic_angle(std::size_t m) const { return two_pi<Scalar> * Scalar(m) / Scalar(p_.n_rx); }
        Scalar tx_azimuth(std::size_t n) const { return tx_basic_angle(n) + p_.offset_alpha_tx; }
        Scalar rx_azimuth(std::size_t m) const { return rx_basic_angle(m) + p_.offset_alpha_rx; }

        // True when d < 5 max(r, R): the far-field closed forms lose accuracy.
        bool far_field_advisory() const
        {
            return p_.center_distance < Scalar(5) * std::max(p_.radius_tx, p_.radius_rx);
        }

        void check_tx(std::size_t n) const
        {
            if (n >= p_.n_tx)
                throw std::out_of_range("transmit element index " + std::to_string(n) + " >= " + std::to_string(p_.n_tx));
        }
        void check_rx(std::size_t m) const
        {
            if (m >= p_.n_rx)
                throw std::out_of_range("receive element index " + std::to_string(m) + " >= " + std::to_string(p_.n_rx));
        }

        bool operator==(const LinkGeometry &) const = default;

    private:
        static void require_positive(const char *field, Scalar v)
        {
            if (!(v > Scalar(0)) || !std::isfinite(v))
                throw ValidationError(field, "must be positive and finite");
        }
        static void require_finite(const char *field, Scalar v)
        {
            if (!std::isfinite(v))
                throw ValidationError(field, "must be finite");
        }

        LinkParams<Scalar> p_;
    };

    // Rounds toward zero: the smallest integer >= kappa for negative kappa, the
    // largest integer <= kappa otherwise. Used for the OAM mode-range bounds.
    template <typename Scalar>
    long toward_zero_floor(Scalar kappa)
    {
        return static_cast<long>(std::trunc(kappa));
    }

    // Ordered OAM mode numbers l carried by an N-element transmit array.
    class ModeIndexSet
    {
    public:
        explicit ModeIndexSet(std::size_t n_tx)
        {
            const double n = static_cast<double>(n_tx);
            lower_ = static_cast<int>(toward_zero_floor((2.0 - n) / 2.0));
            upper_ = static_cast<int>(toward_zero_floor(n / 2.0));
            for (int l = lower_; l <= upper_; ++l)
                modes_.push_back(l);
        }

        int lower() const noexcept { return lower_; }
        int upper() const noexcept { return upper_; }
        std::size_t size() const noexcept { return modes_.size(); }
        bool contains(int l) const noexcept { return l >= lower_ && l <= upper_; }
        int operator[](std::size_t i) const { return modes_[i]; }

        std::size_t index_of(int l) const
        {
            if (!contains(l))
                throw std::out_of_range("mode " + std::to_string(l) + " not in [" + std::to_string(lower_) + ", " + std::to_string(upper_) + "]");
            return static_cast<std::size_t>(l - lower_);
        }

        auto begin() const noexcept { return modes_.begin(); }
        auto end() const noexcept { return modes_.end(); }
        const std::vector<int> &modes() const noexcept { return modes_; }

        bool operator==(const ModeIndexSet &) const = default;

    private:
        int lower_ = 0;
        int upper_ = 0;
        std::vector<int> modes_;
    };

    template <typename Scalar>
    ModeIndexSet mode_index_set(const LinkGeometry<Scalar> &g)
    {
        return ModeIndexSet(g.n_tx());
    }

    template <typename Scalar>
    struct ElementPositions
    {
        Matrix3X<Scalar> tx; // 3 x N
        Matrix3X<Scalar> rx; // 3 x M
    };

    template <typename Scalar>
    ElementPositions<Scalar> element_positions(const LinkGeometry<Scalar> &g)
    {
        ElementPositions<Scalar> out{Matrix3X<Scalar>(3, Eigen::Index(g.n_tx())), Matrix3X<Scalar>(3, Eigen::Index(g.n_rx()))};
        const Scalar r = g.radius_tx(), R = g.radius_rx();
        const Scalar off = g.lateral_offset(), th = g.bearing_theta();
        for (std::size_t n = 0; n < g.n_tx(); ++n)
        {
            const Scalar az = g.tx_azimuth(n);
            out.tx.col(Eigen::Index(n)) << r * std::cos(az), r * std::sin(az), Scalar(0);
        }
        for (std::size_t m = 0; m < g.n_rx(); ++m)
        {
            const Scalar az = g.rx_azimuth(m);
            out.rx.col(Eigen::Index(m)) << R * std::cos(az) - off * std::cos(th),
                R * std::sin(az) - off * std::sin(th),
                g.plane_separation();
        }
        return out;
    }

    namespace detail
    {
        // Squared in-plane distance between receive element m and the projection of
        // transmit element n. Equal to the three-cosine expansion
        // R^2 + r^2 + d^2 sin^2 phi - 2 r R cos(.) - 2 R d sin phi cos(.) + 2 r d sin phi cos(.),
        // but summed as the norm of the planar offset, which does not cancel.
        template <typename Scalar>
        Scalar projected_distance_sq(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
        {
            const Scalar r = g.radius_tx(), R = g.radius_rx(), off = g.lateral_offset();
            const Scalar az_tx = g.tx_azimuth(n), az_rx = g.rx_azimuth(m), th = g.bearing_theta();
            const Scalar u = R * std::cos(az_rx) - off * std::cos(th) - r * std::cos(az_tx);
            const Scalar v = R * std::sin(az_rx) - off * std::sin(th) - r * std::sin(az_tx);
            return u * u + v * v;
        }
    }

    template <typename Scalar>
    Scalar projected_distance(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
    {
        g.check_rx(m);
        g.check_tx(n);
        return std::sqrt(detail::projected_distance_sq(g, m, n));
    }

    template <typename Scalar>
    Scalar exact_distance(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
    {
        g.check_rx(m);
        g.check_tx(n);
        const Scalar sep = g.plane_separation();
        return std::sqrt(detail::projected_distance_sq(g, m, n) + sep * sep);
    }

    // First-order expansion of the element distance about sqrt(d^2 + r^2 + R^2).
    template <typename Scalar>
    Scalar approx_distance(const LinkGeometry<Scalar> &g, std::size_t m, std::size_t n)
    {
        g.check_rx(m);
        g.check_tx(n);
        const Scalar r = g.radius_tx(), R = g.radius_rx(), off = g.lateral_offset();
        const Scalar az_tx = g.tx_azimuth(n), az_rx = g.rx_azimuth(m), th = g.bearing_theta();
        const Scalar ref = g.reference_distance();
        const Scalar cross = r * R * std::cos(az_rx - az_tx)
                             + R * off * std::cos(az_rx - th)
                             - r * off * std::cos(az_tx - th);
        return ref - cross / ref;
    }

    // Numerators of sin(zeta_m) and cos(zeta_m); their Euclidean norm is the shared
    // denominator sqrt(R^2 + d^2 sin^2 phi - 2 R d sin phi cos(psi_m + a_R - theta)).
    template <typename Scalar>
    struct ZetaTerms
    {
        Scalar sin_numerator;
        Scalar cos_numerator;
        Scalar denominator;
    };

    template <typename Scalar>
    ZetaTerms<Scalar> zeta_terms(const LinkGeometry<Scalar> &g, std::size_t m)
    {
        g.check_rx(m);
        const Scalar off = g.lateral_offset();
        const Scalar a = g.rx_azimuth(m) - g.bearing_theta();
        const Scalar s = g.radius_rx() - off * std::cos(a);
        const Scalar c = off * std::sin(a);
        return {s, c, std::hypot(s, c)};
    }

    inline constexpr double zeta_degeneracy_tolerance = 1e-15;

    // Auxiliary angle zeta_m in (-pi, pi].
    template <typename Scalar>
    Scalar zeta(const LinkGeometry<Scalar> &g, std::size_t m)
    {
        const auto t = zeta_terms(g, m);
        if (!(t.denominator > Scalar(zeta_degeneracy_tolerance)))
            throw DegenerateGeometry("zeta undefined at receive element " + std::to_string(m) + ": denominator vanishes");
        return std::atan2(t.sin_numerator, t.cos_numerator);
    }
}

#endif
