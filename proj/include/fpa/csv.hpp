#pragma once

/**
 * @file csv.hpp
 * @brief Locale-independent CSV for passage samples and histograms.
 *
 * Doubles are written with 17 significant digits via std::to_chars, which
 * round-trips exactly and always uses '.' as the decimal separator.
 */

#include "fpa/mc.hpp"

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace fpa {

inline constexpr std::string_view kSampleCsvHeader = "path_index,tau,area,steps,censored";
inline constexpr std::string_view kHistogramCsvHeader = "bin_left,bin_right,density";

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number: " + std::string(s));
    }
    return v;
}

inline void write_samples_csv(std::ostream& out, const std::vector<PassageSample>& samples) {
    out << kSampleCsvHeader << '\n';
    std::string line;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        line.clear();
        line += std::to_string(i);
        line += ',';
        line += format_double(s.tau);
        line += ',';
        line += format_double(s.area);
        line += ',';
        line += std::to_string(s.steps);
        line += ',';
        line += s.censored ? '1' : '0';
        line += '\n';
        out << line;
    }
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        if (comma == std::string_view::npos) return out;
        pos = comma + 1;
    }
}

inline std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad integer: " + std::string(s));
    }
    return v;
}

}  // namespace detail

/// Reads a sample dump; rows must appear in path_index order.
inline std::vector<PassageSample> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSampleCsvHeader) {
        throw std::invalid_argument("missing sample CSV header");
    }
    std::vector<PassageSample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 5) throw std::invalid_argument("expected 5 fields: " + line);
        if (detail::parse_u64(f[0]) != out.size()) throw std::invalid_argument("path_index out of order");
        PassageSample s;
        s.tau = parse_double(f[1]);
        s.area = parse_double(f[2]);
        s.steps = detail::parse_u64(f[3]);
        if (f[4] != "0" && f[4] != "1") throw std::invalid_argument("bad censored flag: " + line);
        s.censored = f[4] == "1";
        out.push_back(s);
    }
    return out;
}

inline void write_histogram_csv(std::ostream& out, const HistogramDensity& h) {
    out << kHistogramCsvHeader << '\n';
    for (std::size_t i = 0; i < h.bins(); ++i) {
        out << format_double(h.bin_edges[i]) << ',' << format_double(h.bin_edges[i + 1]) << ','
            << format_double(h.density[i]) << '\n';
    }
}

inline HistogramDensity read_histogram_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHistogramCsvHeader) {
        throw std::invalid_argument("missing histogram CSV header");
    }
    HistogramDensity h;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 3) throw std::invalid_argument("expected 3 fields: " + line);
        const double left = parse_double(f[0]);
        if (h.bin_edges.empty()) h.bin_edges.push_back(left);
        h.bin_edges.push_back(parse_double(f[1]));
        h.density.push_back(parse_double(f[2]));
    }
    return h;
}

}  // namespace fpa
