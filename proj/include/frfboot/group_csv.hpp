#pragma once

#include "frfboot/errors.hpp"
#include "frfboot/grid.hpp"
#include "frfboot/number_format.hpp"
#include "frfboot/types.hpp"

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace frfboot {

// Group file layout (UTF-8, LF, comma separated, '.' decimal point):
//
//   subject,re_0.050,im_0.050,re_0.150,im_0.150,...
//   s01,0.93,-0.21,...
//
// Header frequencies carry three decimals and must be strictly increasing.
// Every data row holds exactly 2M + 1 fields.

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline double parse_header_freq(std::string_view field, std::string_view prefix, std::size_t column) {
    if (field.substr(0, prefix.size()) != prefix)
        throw ParseError(1, column, "expected '" + std::string(prefix) + "<freq>', got '" + std::string(field) + "'");
    const auto v = parse_double(field.substr(prefix.size()));
    if (!v || *v <= 0.0)
        throw ParseError(1, column, "invalid frequency in '" + std::string(field) + "'");
    return *v;
}

} // namespace detail

inline FrfGroup read_frf_group(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, 0, "missing header row");
    const auto header = detail::split_fields(line);
    if (header.empty() || header[0] != "subject")
        throw ParseError(1, 1, "first header field must be 'subject'");
    if (header.size() < 3 || header.size() % 2 == 0)
        throw ParseError(1, 0, "header must have 'subject' followed by re_/im_ pairs");

    std::vector<double> freqs;
    for (std::size_t c = 1; c < header.size(); c += 2) {
        const double fr = detail::parse_header_freq(header[c], "re_", c + 1);
        const double fi = detail::parse_header_freq(header[c + 1], "im_", c + 2);
        if (fr != fi)
            throw ParseError(1, c + 2, "imaginary column frequency differs from the real column before it");
        if (!freqs.empty() && !(fr > freqs.back()))
            throw ParseError(1, c + 1, "header frequencies are not strictly increasing");
        freqs.push_back(fr);
    }
    FrequencyGrid grid = [&] {
        try {
            return make_frequency_grid(freqs);
        } catch (const Error& e) {
            throw ParseError(1, 0, e.what());
        }
    }();

    const std::size_t m = freqs.size();
    std::vector<Frf> members;
    std::vector<std::string> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 2 * m + 1)
            throw ParseError(line_no, 0,
                             "expected " + std::to_string(2 * m + 1) + " fields, got " + std::to_string(fields.size()));
        Frf h{std::vector<Complex>(m)};
        for (std::size_t k = 0; k < m; ++k) {
            const auto re = parse_double(fields[1 + 2 * k]);
            if (!re)
                throw ParseError(line_no, 2 + 2 * k, "not a finite number: '" + std::string(fields[1 + 2 * k]) + "'");
            const auto im = parse_double(fields[2 + 2 * k]);
            if (!im)
                throw ParseError(line_no, 3 + 2 * k, "not a finite number: '" + std::string(fields[2 + 2 * k]) + "'");
            h.values[k] = {*re, *im};
        }
        labels.emplace_back(fields[0]);
        members.push_back(std::move(h));
    }
    if (members.empty())
        throw ParseError(line_no + 1, 0, "empty group: no subject rows");
    return FrfGroup(std::move(grid), std::move(members), std::move(labels));
}

inline FrfGroup read_frf_group(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_frf_group(in);
}

inline std::string write_frf_group(const FrfGroup& g) {
    const auto& grid = g.grid();
    if (1000 % grid.resolution() != 0)
        throw ValidationError("grid frequencies cannot be written with three decimals");
    std::string out = "subject";
    for (double f : grid.freqs()) {
        const auto s = format_fixed(f, 3);
        out += ",re_" + s + ",im_" + s;
    }
    out += '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& label = g.labels()[i];
        if (label.find_first_of(",\n\r") != std::string::npos || trim(label) != label || label.empty())
            throw ValidationError("subject label '" + label + "' cannot be written to a group file");
        out += label;
        for (const auto& v : g[i].values) {
            out += ',';
            out += format_double(v.real());
            out += ',';
            out += format_double(v.imag());
        }
        out += '\n';
    }
    return out;
}

} // namespace frfboot
