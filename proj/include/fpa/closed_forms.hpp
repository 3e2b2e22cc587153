#pragma once

/**
 * @file closed_forms.hpp
 * @brief Explicit formulas for the first-passage time tau and area A of
 *        X(t) = x - mu t + B_t below zero, in double precision.
 */

#include "fpa/quad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpa {

struct ModelParams {
    double x = 1.0;   ///< starting level, > 0
    double mu = 1.0;  ///< drift magnitude, > 0 except where zero drift is allowed
};

/// Correlation of (tau, A) as gamma = mu x -> infinity.
inline const double kRhoLargeDrift = std::sqrt(3.0 / 4.0);
/// Correlation of (tau, A) as gamma = mu x -> 0+.
inline const double kRhoZeroDrift = std::sqrt(4.0 / 5.0);

namespace detail {

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw std::domain_error(std::string(name) + " must be positive");
}

inline void require_params(const ModelParams& p) {
    require_positive(p.x, "x");
    require_positive(p.mu, "mu");
}

// x^2/(2r) + x/(2 r^2), shared by E A (r = mu) and E[A exp(-lambda1 tau)].
inline double area_factor(double x, double r, double r_sq) {
    return x * x / (2.0 * r) + x / (2.0 * r_sq);
}

// sqrt(mu^2 + 2l) - mu, rewritten as 2l / (sqrt(mu^2 + 2l) + mu) to avoid cancellation
inline double laplace_shift(double mu, double lambda, double root) {
    return 2.0 * lambda / (root + mu);
}

}  // namespace detail

/// E exp(-lambda tau) = exp(-x (sqrt(mu^2 + 2 lambda) - mu)).
inline double fpt_laplace(const ModelParams& p, double lambda) {
    detail::require_params(p);
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    const double root = std::sqrt(p.mu * p.mu + 2.0 * lambda);
    return std::exp(-p.x * detail::laplace_shift(p.mu, lambda, root));
}

/// Inverse Gaussian density of tau.
inline double fpt_density(const ModelParams& p, double t) {
    detail::require_positive(p.x, "x");
    if (!(p.mu >= 0.0)) throw std::domain_error("mu must be nonnegative");
    detail::require_positive(t, "t");
    const double d = p.x - p.mu * t;
    return p.x / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(-d * d / (2.0 * t));
}

/// Density of A at zero drift; tail ~ a^{-4/3}, so no moments are finite.
inline double fpa_density_zero_drift(double x, double a) {
    detail::require_positive(x, "x");
    detail::require_positive(a, "a");
    static const double norm = std::cbrt(2.0) / (std::cbrt(9.0) * std::tgamma(1.0 / 3.0));
    return norm * x / std::pow(a, 4.0 / 3.0) * std::exp(-2.0 * x * x * x / (9.0 * a));
}

/// E A = x^2/(2 mu) + x/(2 mu^2)
inline double mean_fpa(const ModelParams& p) {
    detail::require_params(p);
    return detail::area_factor(p.x, p.mu, p.mu * p.mu);
}

/// E A^2 = x^4/(4 mu^2) + 5x^3/(6 mu^3) + 5x^2/(4 mu^4) + 5x/(4 mu^5)
inline double second_moment_fpa(const ModelParams& p) {
    detail::require_params(p);
    const double x = p.x;
    const double mu = p.mu;
    return std::pow(x, 4) / (4.0 * mu * mu) + 5.0 * std::pow(x, 3) / (6.0 * std::pow(mu, 3)) +
           5.0 * x * x / (4.0 * std::pow(mu, 4)) + 5.0 * x / (4.0 * std::pow(mu, 5));
}

/// Var A = x^3/(3 mu^3) + x^2/mu^4 + 5x/(4 mu^5)
inline double var_fpa(const ModelParams& p) {
    detail::require_params(p);
    const double x = p.x;
    const double mu = p.mu;
    return std::pow(x, 3) / (3.0 * std::pow(mu, 3)) + x * x / std::pow(mu, 4) +
           5.0 * x / (4.0 * std::pow(mu, 5));
}

/// E[tau A] = x^3/(2 mu^2) + x^2/mu^3 + x/mu^4
inline double mean_tau_a(const ModelParams& p) {
    detail::require_params(p);
    const double x = p.x;
    const double mu = p.mu;
    return std::pow(x, 3) / (2.0 * mu * mu) + x * x / std::pow(mu, 3) + x / std::pow(mu, 4);
}

/// Correlation of (tau, A) as a function of gamma = mu x.
inline double rho_exact(double gamma) {
    detail::require_positive(gamma, "gamma");
    const double g = gamma;
    return std::sqrt((3.0 * g * g + 12.0 * g + 12.0) / (4.0 * g * g + 12.0 * g + 15.0));
}

/// E[A exp(-lambda1 tau)]
inline double w_joint(const ModelParams& p, double lambda1) {
    detail::require_params(p);
    if (!(lambda1 >= 0.0)) throw std::domain_error("lambda1 must be nonnegative");
    // e^{mu x} e^{-x r} folded into exp(-x (r - mu)); at lambda1 = 0 the factor is
    // exactly 1 and r == mu, so the result is bitwise mean_fpa.
    const double r_sq = p.mu * p.mu + 2.0 * lambda1;
    const double r = std::sqrt(r_sq);
    return std::exp(-p.x * detail::laplace_shift(p.mu, lambda1, r)) * detail::area_factor(p.x, r, r_sq);
}

/// E[A / tau] = (x/2) (1 + int_0^inf e^{-s x}/(s + mu) ds); tends to x/2 as mu -> infinity.
inline double expected_time_average(const ModelParams& p, double tol = 1e-10) {
    detail::require_params(p);
    const QuadResult tail = integrate_exp_tail(p.x, p.mu, tol);
    return 0.5 * p.x * (1.0 + tail.value);
}

}  // namespace fpa
