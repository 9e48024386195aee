// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_SPECFUN_HPP
#define VORTEX_SPECFUN_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vortex/errors.hpp"

namespace vortex
{
    inline constexpr int max_bessel_order = 64;

    namespace detail
    {
        // Ascending series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!), n >= 0.
        template <typename Scalar>
        Scalar bessel_j_series(int n, Scalar x)
        {
            const Scalar half = x / Scalar(2);
            Scalar term = Scalar(1);
            for (int k = 1; k <= n; ++k)
                term *= half / Scalar(k);
            if (term == Scalar(0))
                return Scalar(0);

            const Scalar q = -half * half;
            Scalar sum = term;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (Scalar(k) * Scalar(k + n));
                sum += term;
                if (std::abs(term) <= std::numeric_limits<Scalar>::epsilon() * std::abs(sum) * Scalar(0.25))
                    break;
            }
            return sum;
        }

        // Miller's backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
        // J_0 + 2 (J_2 + J_4 + ...) = 1. Stable for every order at x > 0.
        template <typename Scalar>
        Scalar bessel_j_miller(int n, Scalar x)
        {
            const int top = std::max(n, static_cast<int>(std::ceil(x)));
            int start = top + 20 + static_cast<int>(std::sqrt(Scalar(40) * Scalar(top)));
            start += start % 2;

            const Scalar big = std::sqrt(std::numeric_limits<Scalar>::max()) / Scalar(16);
            const Scalar two_over_x = Scalar(2) / x;

            Scalar j_next = Scalar(0); // J_{k+1}
            Scalar j_cur = Scalar(1);  // J_k, arbitrary seed at k = start
            Scalar wanted = Scalar(0);
            Scalar norm = Scalar(0);   // 2 (J_2 + J_4 + ...), accumulated as k hits even values
            for (int k = start; k > 0; --k)
            {
                const Scalar j_prev = Scalar(k) * two_over_x * j_cur - j_next;
                j_next = j_cur;
                j_cur = j_prev; // now J_{k-1}
                if (std::abs(j_cur) > big)
                {
                    j_cur /= big;
                    j_next /= big;
                    wanted /= big;
                    norm /= big;
                }
                const int idx = k - 1;
                if (idx == n)
                    wanted = j_cur;
                if (idx > 0 && idx % 2 == 0)
                    norm += Scalar(2) * j_cur;
            }
            return wanted / (j_cur + norm);
        }
    }

    // Bessel function of the first kind of integer order, i.e. the real value of
    // (1/2pi) int_0^{2pi} exp(j l tau) exp(-j x sin tau) dtau.
    template <typename Scalar>
    Scalar bessel_j(int order, Scalar x)
    {
        if (order < -max_bessel_order || order > max_bessel_order)
            throw OrderOutOfRange(order);
        if (!std::isfinite(x))
            throw std::domain_error("bessel_j: argument must be finite");

        const int n = std::abs(order);
        // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x)
        const bool flip = (n % 2 == 1) && ((order < 0) != (x < Scalar(0)));
        const Scalar ax = std::abs(x);

        Scalar value;
        if (ax == Scalar(0))
            value = (n == 0) ? Scalar(1) : Scalar(0);
        else if (ax <= Scalar(2))
            value = detail::bessel_j_series(n, ax);
        else
            value = detail::bessel_j_miller(n, ax);
        return flip ? -value : value;
    }

    namespace detail
    {
        // sin and cos of 2 pi j / nodes, j = 0 .. nodes - 1; the last table built is kept per thread.
        template <typename Scalar>
        struct UnitCircleTable
        {
            std::size_t nodes = 0;
            std::vector<Scalar> sin, cos;

            static const UnitCircleTable &get(std::size_t nodes)
            {
                thread_local UnitCircleTable table;
                if (table.nodes != nodes)
                {
                    table.nodes = nodes;
                    table.sin.resize(nodes);
                    table.cos.resize(nodes);
                    for (std::size_t j = 0; j < nodes; ++j)
                    {
                        const Scalar t = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(nodes);
                        table.sin[j] = std::sin(t);
                        table.cos[j] = std::cos(t);
                    }
                }
                return table;
            }
        };
    }

    // Trapezoidal evaluation of the defining integral over one period. The integrand
    // is periodic and analytic, so the rule converges geometrically in `nodes`.
    template <typename Scalar>
    Scalar bessel_j_quadrature(int order, Scalar x, std::size_t nodes)
    {
        if (nodes < 1024)
            throw std::invalid_argument("bessel_j_quadrature: at least 1024 nodes required");

        const auto &t = detail::UnitCircleTable<Scalar>::get(nodes);
        const std::size_t lmod = std::size_t((order % std::int64_t(nodes) + std::int64_t(nodes)) % std::int64_t(nodes));
        // l tau_k as an exact table index.
        const auto turn = [&](std::size_t k) { return (lmod * k) % nodes; };

        // f_k = cos(l tau_k - x sin tau_k) satisfies f_k = f_{nodes-k}.
        Scalar sum(0);
        if (nodes % 2 != 0)
        {
            sum = Scalar(1);
            for (std::size_t k = 1; k <= nodes / 2; ++k)
            {
                const std::size_t j = turn(k);
                sum += Scalar(2) * (t.cos[j] * std::cos(x * t.sin[k]) + t.sin[j] * std::sin(x * t.sin[k]));
            }
            return sum / Scalar(nodes);
        }

        // Even count: fold k with nodes/2 - k as well, leaving one transcendental per pair.
        const bool even_order = order % 2 == 0;
        const std::size_t half = nodes / 2;
        sum = Scalar(1) + (even_order ? Scalar(1) : Scalar(-1)); // tau = 0 and tau = pi
        Scalar inner(0);
        for (std::size_t k = 1; 2 * k < half; ++k)
        {
            const std::size_t j = turn(k);
            const Scalar xs = x * t.sin[k];
            inner += even_order ? Scalar(2) * t.cos[j] * std::cos(xs) : Scalar(2) * t.sin[j] * std::sin(xs);
        }
        if (half % 2 == 0)
        {
            const std::size_t j = turn(half / 2);
            inner += t.cos[j] * std::cos(x) + t.sin[j] * std::sin(x); // tau = pi/2
        }
        sum += Scalar(2) * inner;
        return sum / Scalar(nodes);
    }
}

#endif
