// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#include "vortex/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vortex::cli
{
    std::string format_real(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 15);
        if (res.ec != std::errc{})
            throw std::runtime_error("format_real: conversion failed");
        return std::string(buf.data(), res.ptr);
    }

    std::string format_roundtrip(double value)
    {
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
        if (res.ec != std::errc{})
            throw std::runtime_error("format_roundtrip: conversion failed");
        return std::string(buf.data(), res.ptr);
    }

    CsvDocument::CsvDocument(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void CsvDocument::comment(std::string_view text)
    {
        comments_.push_back("# " + std::string(text));
    }

    void CsvDocument::comment_block(std::string_view block)
    {
        std::size_t pos = 0;
        while (pos < block.size())
        {
            const std::size_t end = block.find('\n', pos);
            const std::string_view line = block.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            if (!line.empty())
                comment(line);
            if (end == std::string_view::npos)
                break;
            pos = end + 1;
        }
    }

    void CsvDocument::row(std::initializer_list<std::string> fields)
    {
        if (fields.size() != columns_.size())
            throw std::logic_error("CsvDocument: row width does not match header");
        std::string line;
        bool first = true;
        for (const auto &f : fields)
        {
            if (!first)
                line += ',';
            line += f;
            first = false;
        }
        rows_.push_back(std::move(line));
    }

    std::string CsvDocument::str() const
    {
        std::string out;
        for (std::size_t i = 0; i < columns_.size(); ++i)
        {
            if (i)
                out += ',';
            out += columns_[i];
        }
        out += '\n';
        for (const auto &c : comments_)
            out += c + '\n';
        for (const auto &r : rows_)
            out += r + '\n';
        return out;
    }
}
