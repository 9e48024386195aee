// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_ERRORS_HPP
#define VORTEX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vortex
{
    // Base of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A geometry or configuration field violates its invariant.
    class ValidationError : public Error
    {
    public:
        ValidationError(std::string field, const std::string &what)
            : Error("invalid " + field + ": " + what), field_(std::move(field)) {}
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    // Malformed configuration text.
    class ParseError : public Error
    {
    public:
        ParseError(std::size_t line, const std::string &what)
            : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    // The auxiliary angle zeta_m is undefined (R -> 0 together with phi -> 0).
    class DegenerateGeometry : public Error
    {
    public:
        using Error::Error;
    };

    class OrderOutOfRange : public Error
    {
    public:
        explicit OrderOutOfRange(int order)
            : Error("Bessel order " + std::to_string(order) + " outside [-64, 64]"), order_(order) {}
        int order() const noexcept { return order_; }

    private:
        int order_;
    };

    // A special-case formula was requested for a geometry outside that case.
    class CaseMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class LengthMismatch : public Error
    {
    public:
        LengthMismatch(std::size_t expected, std::size_t got)
            : Error("length mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(got)) {}
    };

    // |C_{m,l0}| is below the inversion guard, mode l0 cannot be separated at element m.
    class ModeUnobservable : public Error
    {
    public:
        ModeUnobservable(std::size_t element, int mode)
            : Error("mode " + std::to_string(mode) + " unobservable at receive element " + std::to_string(element)),
              element_(element), mode_(mode) {}
        std::size_t element() const noexcept { return element_; }
        int mode() const noexcept { return mode_; }

    private:
        std::size_t element_;
        int mode_;
    };
}

#endif
