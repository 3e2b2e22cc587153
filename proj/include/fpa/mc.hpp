#pragma once

/**
 * @file mc.hpp
 * @brief Monte Carlo simulation of X(t) = x - mu t + B_t up to its first passage below zero.
 *
 * Paths use exact Gaussian increments on a grid of step dt. A crossing is detected
 * when the next grid value is <= 0 or, with bridge correction, with the Brownian
 * bridge probability exp(-2 X_k X_{k+1} / dt) of dipping below zero between two
 * positive grid values. Area accumulates by the trapezoid rule.
 */

#include "fpa/closed_forms.hpp"
#include "fpa/philox.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace fpa {

struct SimConfig {
    ModelParams params;
    double dt = 1e-3;
    std::size_t paths = 100000;
    std::uint64_t seed = 0;
    bool bridge_correction = true;
    /// Safety horizon; when unset, 50 x / mu (required explicitly at mu = 0).
    std::optional<double> max_time;

    [[nodiscard]] double horizon() const {
        if (max_time) return *max_time;
        if (!(params.mu > 0.0)) throw std::invalid_argument("max_time must be given when mu = 0");
        return 50.0 * params.x / params.mu;
    }

    void validate() const {
        if (!(params.x > 0.0)) throw std::invalid_argument("x must be positive");
        if (!(params.mu >= 0.0)) throw std::invalid_argument("mu must be nonnegative");
        if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
        if (paths < 1) throw std::invalid_argument("paths must be at least 1");
        if (!(horizon() > 0.0)) throw std::invalid_argument("max_time must be positive");
    }
};

struct PassageSample {
    double tau = 0.0;
    double area = 0.0;
    std::uint64_t steps = 0;
    bool censored = false;

    friend bool operator==(const PassageSample&, const PassageSample&) = default;
};

struct EstimatorSummary {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0;
    std::size_t censored_count = 0;
};

struct HistogramDensity {
    std::vector<double> bin_edges;  ///< bins + 1 strictly increasing edges
    std::vector<double> density;    ///< per-bin density; sum density * width = 1
    std::size_t in_range = 0;       ///< uncensored samples that fell inside the range
    std::size_t uncensored = 0;

    [[nodiscard]] std::size_t bins() const noexcept { return density.size(); }
    [[nodiscard]] double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    [[nodiscard]] double peak() const {
        return density.empty() ? 0.0 : *std::max_element(density.begin(), density.end());
    }
    /// sum over bins of midpoint * density * width
    [[nodiscard]] double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < bins(); ++i) {
            m += 0.5 * (bin_edges[i] + bin_edges[i + 1]) * density[i] * width(i);
        }
        return m;
    }
};

class InsufficientSamples : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateSample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bridge crossings with probability below exp(-kBridgeCutoff) (about 4e-18) are not drawn.
inline constexpr double kBridgeCutoff = 40.0;

/**
 * One path, driven by stream (seed, stream_index). Increments come from lane 0 and
 * bridge uniforms from lane 1, so a path with and without bridge correction sees
 * the same increments and the corrected tau is never later than the uncorrected.
 *
 * On an endpoint crossing tau is placed by linear interpolation between the grid
 * values and the last piece of area is the triangle X_k (tau - t_k) / 2; on a
 * bridge crossing tau is the step midpoint and the step's trapezoid is halved.
 */
inline PassageSample simulate_path(const SimConfig& config, std::uint64_t stream_index) {
    const double x0 = config.params.x;
    const double dt = config.dt;
    const double drift = config.params.mu * dt;
    const double sqrt_dt = std::sqrt(dt);
    const double horizon = config.horizon();
    const double inv_dt2 = 2.0 / dt;

    PhiloxStream increments(config.seed, stream_index, 0);
    PhiloxStream bridge(config.seed, stream_index, 1);

    double level = x0;
    double area = 0.0;
    std::uint64_t k = 0;
    while (true) {
        const double t_k = static_cast<double>(k) * dt;
        if (t_k >= horizon) return {t_k, area, k, true};
        const double next = level - drift + sqrt_dt * increments.normal();
        ++k;
        if (next <= 0.0) {
            const double tau = t_k + dt * level / (level - next);
            return {tau, area + 0.5 * level * (tau - t_k), k, false};
        }
        if (config.bridge_correction) {
            const double q = inv_dt2 * level * next;
            if (q < kBridgeCutoff && bridge.uniform() < std::exp(-q)) {
                return {t_k + 0.5 * dt, area + 0.25 * (level + next) * dt, k, false};
            }
        }
        area += 0.5 * (level + next) * dt;
        level = next;
    }
}

/// All paths 0..paths-1; the result is indexed by stream, independent of thread count.
inline std::vector<PassageSample> run(const SimConfig& config, unsigned threads = 0) {
    config.validate();
    std::vector<PassageSample> samples(config.paths);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.paths));

    constexpr std::size_t kChunk = 256;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= config.paths) return;
            const std::size_t end = std::min(begin + kChunk, config.paths);
            for (std::size_t i = begin; i < end; ++i) samples[i] = simulate_path(config, i);
        }
    };
    if (threads <= 1) {
        worker();
        return samples;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return samples;
}

inline std::size_t censored_count(const std::vector<PassageSample>& samples) {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.censored; }));
}

/// Sample mean and standard error of stat(sample) over uncensored samples.
template <class Stat>
EstimatorSummary estimate_mean(const std::vector<PassageSample>& samples, Stat stat) {
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.censored) values.push_back(stat(s));
    }
    if (values.size() < 2) throw InsufficientSamples("need at least 2 uncensored samples");
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n), values.size(), samples.size() - values.size()};
}

inline EstimatorSummary estimate_joint_moment(const std::vector<PassageSample>& samples, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("moment orders must be nonnegative");
    return estimate_mean(samples, [m, n](const PassageSample& s) {
        return std::pow(s.tau, m) * std::pow(s.area, n);
    });
}

inline EstimatorSummary estimate_time_average(const std::vector<PassageSample>& samples) {
    return estimate_mean(samples, [](const PassageSample& s) { return s.area / s.tau; });
}

/// Pearson correlation of (tau, A); standard error (1 - r^2)/sqrt(n - 3) from the Fisher-z delta method.
inline EstimatorSummary estimate_correlation(const std::vector<PassageSample>& samples) {
    double mt = 0.0;
    double ma = 0.0;
    std::size_t n = 0;
    for (const auto& s : samples) {
        if (s.censored) continue;
        mt += s.tau;
        ma += s.area;
        ++n;
    }
    if (n < 3) throw InsufficientSamples("need at least 3 uncensored samples");
    mt /= static_cast<double>(n);
    ma /= static_cast<double>(n);
    double stt = 0.0;
    double saa = 0.0;
    double sta = 0.0;
    for (const auto& s : samples) {
        if (s.censored) continue;
        const double dt = s.tau - mt;
        const double da = s.area - ma;
        stt += dt * dt;
        saa += da * da;
        sta += dt * da;
    }
    if (stt == 0.0 || saa == 0.0) throw DegenerateSample("zero sample variance");
    const double r = sta / std::sqrt(stt * saa);
    const double se = n > 3 ? (1.0 - r * r) / std::sqrt(static_cast<double>(n - 3))
                            : std::numeric_limits<double>::infinity();
    return {r, se, n, samples.size() - n};
}

/**
 * Normalized histogram of A over uncensored samples in [range.first, range.second]
 * (default [0, empirical 99.5th percentile]). Normalization is over the samples
 * inside the range.
 */
inline HistogramDensity estimate_density(const std::vector<PassageSample>& samples, std::size_t bins,
                                         std::optional<std::pair<double, double>> range = std::nullopt) {
    if (bins < 2) throw std::invalid_argument("need at least 2 bins");
    std::vector<double> areas;
    areas.reserve(samples.size());
    for (const auto& s : samples) {
        if (!s.censored) areas.push_back(s.area);
    }
    if (areas.size() < 2) throw InsufficientSamples("need at least 2 uncensored samples");

    if (!range) {
        std::vector<double> sorted = areas;
        const auto idx = static_cast<std::size_t>(std::ceil(0.995 * static_cast<double>(sorted.size()))) - 1;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
        range = std::pair{0.0, sorted[idx]};
    }
    const auto [lo, hi] = *range;
    if (!(hi > lo)) throw std::invalid_argument("histogram range must satisfy lo < hi");

    HistogramDensity h;
    h.uncensored = areas.size();
    h.bin_edges.resize(bins + 1);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = lo + w * static_cast<double>(i);
    h.bin_edges[bins] = hi;

    std::vector<std::size_t> counts(bins, 0);
    for (double a : areas) {
        if (a < lo || a > hi) continue;
        auto i = static_cast<std::size_t>((a - lo) / w);
        if (i >= bins) i = bins - 1;
        ++counts[i];
        ++h.in_range;
    }
    if (h.in_range == 0) throw InsufficientSamples("no samples inside histogram range");
    h.density.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        h.density[i] = static_cast<double>(counts[i]) / (static_cast<double>(h.in_range) * h.width(i));
    }
    return h;
}

}  // namespace fpa
