// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_CLI_CSV_HPP
#define VORTEX_CLI_CSV_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace vortex::cli
{
    // Locale-independent scientific notation, 16 significant digits; "nan" for NaN.
    std::string format_real(double value);

    // Shortest text that parses back to the same double.
    std::string format_roundtrip(double value);

    // Buffers a CSV document: one header line, then '#' metadata lines, then rows.
    class CsvDocument
    {
    public:
        explicit CsvDocument(std::vector<std::string> columns);

        void comment(std::string_view text);
        // Each line of `block` becomes its own comment line.
        void comment_block(std::string_view block);
        void row(std::initializer_list<std::string> fields);

        std::string str() const;

    private:
        std::vector<std::string> columns_;
        std::vector<std::string> comments_;
        std::vector<std::string> rows_;
    };
}

#endif
