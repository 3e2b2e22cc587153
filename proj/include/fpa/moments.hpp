#pragma once

/**
 * @file moments.hpp
 * @brief Exact joint moments V_{m,n}(x) = E[tau(x)^m A(x)^n] of drifted Brownian motion.
 *
 * V_{m,n} solves 1/2 V'' - mu V' = -m V_{m-1,n} - n x V_{m,n-1} with V(0) = 0 and
 * vanishing as mu -> infinity. The homogeneous part c1 + c2 exp(2 mu x) is
 * excluded by those conditions, so V_{m,n} is the unique polynomial particular
 * solution vanishing at zero, of degree m + 2n. Its coefficients are found from
 * an upper bidiagonal system, either by back-substitution or through the
 * closed-form inverse of that system.
 */

#include "fpa/laurent.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpa {

struct MomentIndex {
    int m = 0;  ///< power of tau
    int n = 0;  ///< power of A

    friend auto operator<=>(const MomentIndex&, const MomentIndex&) = default;

    [[nodiscard]] int degree() const noexcept { return m + 2 * n; }
    [[nodiscard]] std::string str() const {
        return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    }
};

class MissingDependency : public std::out_of_range {
public:
    explicit MissingDependency(const MomentIndex& idx)
        : std::out_of_range("moment table has no entry " + idx.str()) {}
};

/// Family {V_{m,n}}; always holds the base case V_{0,0} = 1.
class MomentTable {
public:
    MomentTable() { entries_.emplace(MomentIndex{0, 0}, Polynomial::constant(LaurentRational(1))); }

    [[nodiscard]] bool contains(const MomentIndex& idx) const { return entries_.count(idx) != 0; }

    [[nodiscard]] const Polynomial& at(const MomentIndex& idx) const {
        auto it = entries_.find(idx);
        if (it == entries_.end()) throw MissingDependency(idx);
        return it->second;
    }

    void insert(const MomentIndex& idx, Polynomial p) { entries_.insert_or_assign(idx, std::move(p)); }

    [[nodiscard]] const std::map<MomentIndex, Polynomial>& entries() const noexcept { return entries_; }

private:
    std::map<MomentIndex, Polynomial> entries_;
};

namespace detail {

inline void check_index(const MomentIndex& idx) {
    if (idx.m < 0 || idx.n < 0) throw std::invalid_argument("moment index must be nonnegative");
}

inline void check_not_base(const MomentIndex& idx) {
    check_index(idx);
    if (idx.m == 0 && idx.n == 0) {
        throw std::invalid_argument("(0,0) is the recursion base and has no right-hand side");
    }
}

}  // namespace detail

/// Right-hand side -m V_{m-1,n} - n x V_{m,n-1}; terms with a negative index vanish.
inline Polynomial assemble_rhs(const MomentIndex& idx, const MomentTable& table) {
    detail::check_not_base(idx);
    Polynomial rhs;
    if (idx.m > 0) rhs -= table.at({idx.m - 1, idx.n}).scaled(LaurentRational(idx.m));
    if (idx.n > 0) rhs -= table.at({idx.m, idx.n - 1}).times_x().scaled(LaurentRational(idx.n));
    return rhs;
}

/**
 * Solves 1/2 V'' - mu V' = rhs for the polynomial V of degree m + 2n with V(0) = 0.
 *
 * Matching the coefficient of x^k gives
 *   (k+1) * ((k+2)/2 * a_{k+2} - mu * a_{k+1}) = r_k,   k = 0 .. m+2n-1,
 * with a_{m+2n+1} = 0, which is solved from the top degree downwards.
 */
inline Polynomial solve_back_substitution(const Polynomial& rhs, const MomentIndex& idx) {
    detail::check_not_base(idx);
    const int top = idx.degree();
    if (rhs.degree() > top - 1) {
        throw std::invalid_argument("rhs degree " + std::to_string(rhs.degree()) + " exceeds " +
                                    std::to_string(top - 1) + " for index " + idx.str());
    }
    std::vector<LaurentRational> a(static_cast<std::size_t>(top) + 2);
    for (int k = top - 1; k >= 0; --k) {
        const auto kk = static_cast<std::size_t>(k);
        // mu * a_{k+1} = (k+2)/2 * a_{k+2} - r_k / (k+1)
        LaurentRational numer = a[kk + 2] * LaurentRational(Rational(k + 2, 2)) -
                                rhs.coefficient(k).divided_by_monomial(Rational(k + 1), 0);
        a[kk + 1] = numer.divided_by_monomial(Rational(1), 1);
    }
    a.pop_back();
    return Polynomial(std::move(a));
}

/**
 * Entry (i, j), 1 <= i <= j, of the inverse of the bidiagonal coefficient
 * matrix with diagonal -i*mu and superdiagonal i(i+1)/2:
 *   -1/(i mu)                                   for j = i,
 *   -(i+1)(i+2)...(j-1) / (2^{j-i} mu^{j-i+1})  for j > i.
 */
inline LaurentRational inverse_entry(int i, int j) {
    if (j < i) return {};
    if (j == i) return LaurentRational::monomial(Rational(-1, i), -1);
    BigInt num = 1;
    for (int k = i + 1; k <= j - 1; ++k) num *= k;
    BigInt den = 1;
    den <<= static_cast<unsigned>(j - i);
    return LaurentRational::monomial(-Rational(num, den), -(j - i + 1));
}

/**
 * Builds V_{m,n} as a = D u + E v, where D = -m A^{-1} and E = -n A^{-1}
 * act on the dependency coefficients shifted into equation rows:
 * row j (the x^{j-1} equation) receives u_j = [V_{m-1,n}]_{j-1} and
 * v_j = [V_{m,n-1}]_{j-2}. Only the upper triangle is visited.
 */
inline Polynomial solve_explicit_inverse(const MomentIndex& idx, const MomentTable& table) {
    detail::check_not_base(idx);
    const int size = idx.degree();
    const Polynomial* prev_tau = idx.m > 0 ? &table.at({idx.m - 1, idx.n}) : nullptr;
    const Polynomial* prev_area = idx.n > 0 ? &table.at({idx.m, idx.n - 1}) : nullptr;

    std::vector<LaurentRational> a(static_cast<std::size_t>(size) + 1);
    for (int i = 1; i <= size; ++i) {
        LaurentRational acc;
        for (int j = i; j <= size; ++j) {
            const LaurentRational c = inverse_entry(i, j);
            if (prev_tau != nullptr) {
                acc += c * LaurentRational(-idx.m) * prev_tau->coefficient(j - 1);
            }
            if (prev_area != nullptr) {
                acc += c * LaurentRational(-idx.n) * prev_area->coefficient(j - 2);
            }
        }
        a[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return Polynomial(std::move(a));
}

enum class Solver { back_substitution, explicit_inverse };

/// Memoizing driver over the (m, n) lattice.
class MomentEngine {
public:
    explicit MomentEngine(Solver solver = Solver::back_substitution) : solver_(solver) {}

    const Polynomial& joint_moment(const MomentIndex& idx) {
        detail::check_index(idx);
        if (table_.contains(idx)) return table_.at(idx);
        // Row-major fill of the rectangle [0,m] x [0,n] keeps every dependency available.
        for (int i = 0; i <= idx.m; ++i) {
            for (int j = 0; j <= idx.n; ++j) {
                const MomentIndex cur{i, j};
                if (table_.contains(cur)) continue;
                table_.insert(cur, solve(cur));
            }
        }
        return table_.at(idx);
    }

    [[nodiscard]] const MomentTable& table() const noexcept { return table_; }
    [[nodiscard]] Solver solver() const noexcept { return solver_; }

private:
    [[nodiscard]] Polynomial solve(const MomentIndex& idx) const {
        if (solver_ == Solver::explicit_inverse) return solve_explicit_inverse(idx, table_);
        return solve_back_substitution(assemble_rhs(idx, table_), idx);
    }

    Solver solver_;
    MomentTable table_;
};

inline Polynomial joint_moment(const MomentIndex& idx, Solver solver = Solver::back_substitution) {
    MomentEngine engine(solver);
    return engine.joint_moment(idx);
}

/// True iff 1/2 V'' - mu V' - rhs vanishes identically.
inline bool verify_ode_residual(const MomentIndex& idx, const MomentTable& table) {
    const Polynomial& v = table.at(idx);
    const Polynomial d1 = v.derivative();
    const Polynomial residual = d1.derivative().scaled(LaurentRational(Rational(1, 2))) -
                                d1.scaled(LaurentRational::monomial(1, 1)) -
                                assemble_rhs(idx, table);
    return residual.is_zero();
}

/**
 * Correlation of tau and A at (x, mu) from V_{1,0}, V_{0,1}, V_{2,0}, V_{0,2}, V_{1,1}.
 *
 * Doubles convert exactly to rationals, so covariance and variances are formed
 * without cancellation error; only the final square root is inexact.
 */
inline double correlation_from_moments(double x, double mu) {
    if (!(x > 0.0) || !(mu > 0.0)) throw std::domain_error("x and mu must be positive");
    MomentEngine engine;
    const Rational rx(x);
    const Rational rmu(mu);
    auto value = [&](int m, int n) { return engine.joint_moment({m, n}).evaluate_exact(rx, rmu); };
    const Rational e_tau = value(1, 0);
    const Rational e_area = value(0, 1);
    const Rational cov = value(1, 1) - e_tau * e_area;
    const Rational var_tau = value(2, 0) - e_tau * e_tau;
    const Rational var_area = value(0, 2) - e_area * e_area;
    const Rational rho_sq = cov * cov / (var_tau * var_area);
    const double rho = std::sqrt(to_double(rho_sq));
    return cov < 0 ? -rho : rho;
}

}  // namespace fpa
