#pragma once

/**
 * @file quad.hpp
 * @brief Globally adaptive Gauss-Kronrod (7/15) quadrature with absolute tolerance.
 *
 * Used for the time-average tail integral int_0^inf e^{-sx}/(s+mu) ds and for
 * normalization and moment checks of densities on (0, inf).
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpa {

struct QuadResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
    long evaluations = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadResult partial)
        : std::runtime_error(what), partial_(partial) {}
    [[nodiscard]] const QuadResult& partial() const noexcept { return partial_; }

private:
    QuadResult partial_;
};

namespace detail {

// Kronrod 15-point abscissae (nonnegative half) and weights; Gauss 7-point weights
// for the shared nodes (every other Kronrod abscissa).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

struct QuadOptions {
    double abs_tol = 1e-10;
    std::size_t max_segments = 4000;
};

/**
 * Integrates f over the finite interval [a, b] to absolute accuracy abs_tol,
 * always bisecting the segment with the largest |K15 - G7| estimate. The
 * returned bound is the sum of the per-segment |K15 - G7| differences.
 */
template <class F>
QuadResult integrate_adaptive(F f, double a, double b, QuadOptions opts = {}) {
    if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!(b > a)) throw std::invalid_argument("integration interval must have b > a");
    long evaluations = 0;
    auto counted = [&](double t) {
        ++evaluations;
        return f(t);
    };

    std::priority_queue<detail::Segment> heap;
    heap.push(detail::gauss_kronrod_15(counted, a, b));
    double total = heap.top().value;
    double error = heap.top().error;

    while (error > opts.abs_tol) {
        if (heap.size() >= opts.max_segments) {
            throw QuadratureError("quadrature did not reach tolerance within segment budget",
                                  {total, error, evaluations});
        }
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("quadrature segment cannot be subdivided further",
                                  {total, error, evaluations});
        }
        heap.pop();
        const auto left = detail::gauss_kronrod_15(counted, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(counted, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of incremental updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {total, error, evaluations};
}

/**
 * int_0^inf e^{-s x} / (s + mu) ds within tol: adaptive quadrature on [0, S] plus
 * the analytic tail bound int_S^inf <= e^{-S x} / (x (S + mu)), with S chosen so
 * that bound is below tol/2.
 */
inline QuadResult integrate_exp_tail(double x, double mu, double tol = 1e-10) {
    if (!(x > 0.0) || !(mu > 0.0)) throw std::domain_error("x and mu must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    auto tail_bound = [&](double s) { return std::exp(-s * x) / (x * (s + mu)); };
    double cutoff = 1.0 / x;
    while (tail_bound(cutoff) >= 0.5 * tol) cutoff *= 2.0;

    auto integrand = [x, mu](double s) { return std::exp(-s * x) / (s + mu); };
    QuadResult r = integrate_adaptive(integrand, 0.0, cutoff, {.abs_tol = 0.5 * tol});
    r.abs_error_bound += tail_bound(cutoff);
    return r;
}

/**
 * int_0^inf f(a) da for a nonnegative density f.
 *
 * The half line is mapped to (0, 1) by a = u / (1 - u). When the density has an
 * algebraic tail f(a) ~ C a^{-p} (p > 1, passed as tail_exponent_hint), the mapped
 * integrand behaves like (1 - u)^{p - 2} at u = 1; the further substitution
 * u = 1 - w^{1/(p-1)} turns that endpoint singularity into a bounded integrand.
 */
inline QuadResult integrate_density(const std::function<double(double)>& f, double tol = 1e-10,
                                    std::optional<double> tail_exponent_hint = std::nullopt) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!tail_exponent_hint) {
        auto mapped = [&f](double u) {
            const double one_minus = 1.0 - u;
            return f(u / one_minus) / (one_minus * one_minus);
        };
        return integrate_adaptive(mapped, 0.0, 1.0, {.abs_tol = tol});
    }

    const double p = *tail_exponent_hint;
    if (!(p > 1.0)) throw std::invalid_argument("tail exponent must exceed 1 for an integrable tail");
    const double k = 1.0 / (p - 1.0);
    // Composed map a = w^{-k} - 1, da = k w^{-k-1} dw, written directly so 1 - u is not
    // formed by cancellation near w = 0.
    auto desingularized = [&f, k](double w) {
        const double wk = std::pow(w, -k);
        return f(wk - 1.0) * k * wk / w;
    };
    return integrate_adaptive(desingularized, 0.0, 1.0, {.abs_tol = tol});
}

}  // namespace fpa
