#pragma once

/**
 * @file philox.hpp
 * @brief Philox4x32-10 counter-based generator (Salmon et al., SC'11, Random123 constants).
 *
 * Each simulated path owns a stream addressed by (seed, stream_index, lane); the
 * generator is a pure function of the counter, so streams are reproducible
 * regardless of which thread runs them. Stream format version: 1.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace fpa {

inline constexpr int kRngStreamVersion = 1;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/**
 * Sequential view of one Philox stream. Block b of the stream is the counter
 * {b_lo, b_hi | lane << 31, stream_lo, stream_hi} under key = seed.
 */
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream_index, std::uint32_t lane) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_index)),
          stream_hi_(static_cast<std::uint32_t>(stream_index >> 32)),
          lane_bit_((lane & 1u) << 31) {}

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) refill();
        const std::uint64_t lo = buffer_[pos_];
        const std::uint64_t hi = buffer_[pos_ + 1];
        pos_ += 2;
        return (hi << 32) | lo;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1], safe for log().
    double uniform_pos() noexcept { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal (ZIGNOR ziggurat, 128 layers). The common path uses one
    /// 64-bit draw: the top 53 bits for the abscissa, the low 7 bits for the layer.
    double normal() noexcept;

private:
    void refill() noexcept {
        const PhiloxCounter ctr = {static_cast<std::uint32_t>(block_),
                                   static_cast<std::uint32_t>(block_ >> 32) | lane_bit_, stream_lo_,
                                   stream_hi_};
        buffer_ = philox4x32_10(ctr, key_);
        ++block_;
        pos_ = 0;
    }

    PhiloxKey key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint32_t lane_bit_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int pos_ = 4;
};

namespace detail {

// Doornik (2005), "An Improved Ziggurat Method to Generate Normal Random Samples".
struct ZigguratTables {
    static constexpr int kLayers = 128;
    static constexpr double kTailStart = 3.442619855899;
    static constexpr double kLayerArea = 9.91256303526217e-3;

    std::array<double, kLayers + 1> x{};
    std::array<double, kLayers> ratio{};

    ZigguratTables() {
        double f = std::exp(-0.5 * kTailStart * kTailStart);
        x[0] = kLayerArea / f;
        x[1] = kTailStart;
        x[kLayers] = 0.0;
        for (int i = 2; i < kLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kLayerArea / x[i - 1] + f));
            f = std::exp(-0.5 * x[i] * x[i]);
        }
        for (int i = 0; i < kLayers; ++i) ratio[i] = x[i + 1] / x[i];
    }

    static const ZigguratTables& get() {
        static const ZigguratTables tables;
        return tables;
    }
};

}  // namespace detail

inline double PhiloxStream::normal() noexcept {
    const auto& z = detail::ZigguratTables::get();
    for (;;) {
        const std::uint64_t bits = next_u64();
        const double u = 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
        const auto i = static_cast<std::size_t>(bits & 0x7F);
        if (std::abs(u) < z.ratio[i]) return u * z.x[i];
        if (i == 0) {
            // Tail beyond kTailStart (Marsaglia).
            double t = 0.0;
            double y = 0.0;
            do {
                t = std::log(uniform_pos()) / detail::ZigguratTables::kTailStart;
                y = std::log(uniform_pos());
            } while (-2.0 * y < t * t);
            return u < 0.0 ? t - detail::ZigguratTables::kTailStart : detail::ZigguratTables::kTailStart - t;
        }
        const double xv = u * z.x[i];
        const double f0 = std::exp(-0.5 * (z.x[i] * z.x[i] - xv * xv));
        const double f1 = std::exp(-0.5 * (z.x[i + 1] * z.x[i + 1] - xv * xv));
        if (f1 + (f0 - f1) * uniform() < 1.0) return xv;
    }
}

}  // namespace fpa
