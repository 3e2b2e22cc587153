#pragma once

/**
 * @file laurent.hpp
 * @brief Exact polynomials in x whose coefficients are Laurent polynomials in mu.
 *
 * Every joint moment E[tau^m A^n] is a polynomial of this kind, e.g.
 * x^3/(2 mu^2) + x^2/mu^3 + x/mu^4. Coefficients are arbitrary-precision
 * rationals and mu is kept symbolic, so one computed polynomial serves all
 * drift values.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpa {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

/// Parses "p" or "p/q" with optional leading sign.
inline Rational parse_rational(std::string_view s) {
    auto valid_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        });
    };
    auto to_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '+') t.remove_prefix(1);
        return BigInt(std::string(t));
    };
    const auto slash = s.find('/');
    const auto num = s.substr(0, slash);
    if (!valid_int(num)) throw std::invalid_argument("bad rational: " + std::string(s));
    if (slash == std::string_view::npos) return Rational(to_int(num));
    const auto den = s.substr(slash + 1);
    if (!valid_int(den) || den.front() == '-') {
        throw std::invalid_argument("bad rational: " + std::string(s));
    }
    const BigInt d = to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    return Rational(to_int(num), d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/**
 * Finite sum of rational multiples of integer powers of mu.
 *
 * Canonical: zero coefficients are never stored, so the empty map is zero and
 * structural equality is semantic equality.
 */
class LaurentRational {
public:
    using Terms = std::map<int, Rational>;

    LaurentRational() = default;
    LaurentRational(Rational c, int mu_power = 0) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.emplace(mu_power, std::move(c));
    }
    LaurentRational(long long c) : LaurentRational(Rational(c)) {}  // NOLINT

    static LaurentRational monomial(Rational c, int mu_power) { return {std::move(c), mu_power}; }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(int mu_power) const {
        auto it = terms_.find(mu_power);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LaurentRational& operator+=(const LaurentRational& rhs) {
        for (const auto& [k, c] : rhs.terms_) accumulate(k, c);
        return *this;
    }
    LaurentRational& operator-=(const LaurentRational& rhs) {
        for (const auto& [k, c] : rhs.terms_) accumulate(k, -c);
        return *this;
    }
    LaurentRational& operator*=(const LaurentRational& rhs) {
        *this = *this * rhs;
        return *this;
    }

    friend LaurentRational operator+(LaurentRational a, const LaurentRational& b) { return a += b; }
    friend LaurentRational operator-(LaurentRational a, const LaurentRational& b) { return a -= b; }
    friend LaurentRational operator-(LaurentRational a) {
        for (auto& [k, c] : a.terms_) c = -c;
        return a;
    }
    friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
        LaurentRational out;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) out.accumulate(ka + kb, ca * cb);
        }
        return out;
    }

    /// Division by a single monomial c*mu^k; the only division the moment recursion needs.
    [[nodiscard]] LaurentRational divided_by_monomial(const Rational& c, int mu_power) const {
        if (c == 0) throw std::domain_error("division by zero monomial");
        LaurentRational out;
        for (const auto& [k, v] : terms_) out.terms_.emplace(k - mu_power, v / c);
        return out;
    }

    friend bool operator==(const LaurentRational&, const LaurentRational&) = default;

    [[nodiscard]] double evaluate(double mu) const {
        if (!(mu > 0.0)) throw std::domain_error("mu must be positive");
        double sum = 0.0;
        for (const auto& [k, c] : terms_) sum += to_double(c) * std::pow(mu, k);
        return sum;
    }

    [[nodiscard]] Rational evaluate_exact(const Rational& mu) const {
        if (mu <= 0) throw std::domain_error("mu must be positive");
        Rational sum = 0;
        for (const auto& [k, c] : terms_) sum += c * rational_pow(mu, k);
        return sum;
    }

    static Rational rational_pow(const Rational& base, int k) {
        Rational out = 1;
        const Rational b = k < 0 ? Rational(1) / base : base;
        for (int i = 0; i < std::abs(k); ++i) out *= b;
        return out;
    }

private:
    void accumulate(int k, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

/**
 * Dense polynomial sum_k coeffs[k] x^k with LaurentRational coefficients.
 *
 * Trailing zero coefficients are trimmed, so the zero polynomial has an empty
 * coefficient vector and degree() == -1. Moment polynomials additionally have
 * a zero constant term (see has_zero_constant()); derivatives need not.
 */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<LaurentRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial constant(LaurentRational c) { return Polynomial({std::move(c)}); }

    /// c * x^x_power * mu^mu_power
    static Polynomial term(Rational c, int x_power, int mu_power) {
        if (x_power < 0) throw std::invalid_argument("negative x power");
        std::vector<LaurentRational> v(static_cast<std::size_t>(x_power) + 1);
        v.back() = LaurentRational(std::move(c), mu_power);
        return Polynomial(std::move(v));
    }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<LaurentRational>& coefficients() const noexcept { return coeffs_; }

    [[nodiscard]] LaurentRational coefficient(int x_power) const {
        if (x_power < 0 || x_power > degree()) return {};
        return coeffs_[static_cast<std::size_t>(x_power)];
    }

    [[nodiscard]] bool has_zero_constant() const { return coefficient(0).is_zero(); }

    Polynomial& operator+=(const Polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
        for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& rhs) { return *this += -rhs; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    [[nodiscard]] Polynomial scaled(const LaurentRational& c) const {
        std::vector<LaurentRational> out;
        out.reserve(coeffs_.size());
        for (const auto& a : coeffs_) out.push_back(a * c);
        return Polynomial(std::move(out));
    }

    [[nodiscard]] Polynomial times_x() const {
        if (is_zero()) return {};
        std::vector<LaurentRational> out;
        out.reserve(coeffs_.size() + 1);
        out.emplace_back();
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return Polynomial(std::move(out));
    }

    [[nodiscard]] Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<LaurentRational> out;
        out.reserve(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            out.push_back(coeffs_[k] * LaurentRational(static_cast<long long>(k)));
        }
        return Polynomial(std::move(out));
    }

    /// Horner evaluation in double precision.
    [[nodiscard]] double evaluate(double x, double mu) const {
        if (!(mu > 0.0)) throw std::domain_error("mu must be positive");
        if (x < 0.0) throw std::domain_error("x must be nonnegative");
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->evaluate(mu);
        return acc;
    }

    [[nodiscard]] Rational evaluate_exact(const Rational& x, const Rational& mu) const {
        if (mu <= 0) throw std::domain_error("mu must be positive");
        if (x < 0) throw std::domain_error("x must be nonnegative");
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + it->evaluate_exact(mu);
        }
        return acc;
    }

    /**
     * Text form: terms by decreasing x power, then decreasing mu power,
     * each as (num/den)*x^k*mu^j, joined by " + ". A pure rational constant
     * prints as the bare rational ("1", "0").
     */
    [[nodiscard]] std::string to_text() const {
        if (is_zero()) return "0";
        if (degree() == 0 && coeffs_[0].terms().size() == 1 && coeffs_[0].terms().count(0) == 1) {
            return fpa::to_string(coeffs_[0].terms().at(0));
        }
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const auto& terms = coeffs_[static_cast<std::size_t>(k)].terms();
            for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
                if (!out.empty()) out += " + ";
                out += "(" + fpa::to_string(it->second) + ")*x^" + std::to_string(k) + "*mu^" +
                       std::to_string(it->first);
            }
        }
        return out;
    }

    /// Inverse of to_text().
    static Polynomial parse_text(std::string_view text) {
        auto trim_ws = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        text = trim_ws(text);
        if (text.empty()) throw std::invalid_argument("empty polynomial text");
        if (text.front() != '(') return constant(LaurentRational(parse_rational(text)));

        auto parse_int = [](std::string_view s) {
            std::size_t used = 0;
            const std::string str(s);
            const int v = std::stoi(str, &used);
            if (used != str.size()) throw std::invalid_argument("bad exponent: " + str);
            return v;
        };

        Polynomial out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto next = text.find(" + ", pos);
            const auto token = trim_ws(text.substr(pos, next == std::string_view::npos ? next : next - pos));
            pos = next == std::string_view::npos ? text.size() : next + 3;

            const auto close = token.find(')');
            if (token.empty() || token.front() != '(' || close == std::string_view::npos) {
                throw std::invalid_argument("bad term: " + std::string(token));
            }
            const Rational c = parse_rational(token.substr(1, close - 1));
            auto rest = token.substr(close + 1);
            constexpr std::string_view kX = "*x^";
            constexpr std::string_view kMu = "*mu^";
            if (rest.substr(0, kX.size()) != kX) throw std::invalid_argument("bad term: " + std::string(token));
            rest.remove_prefix(kX.size());
            const auto mu_at = rest.find(kMu);
            if (mu_at == std::string_view::npos) throw std::invalid_argument("bad term: " + std::string(token));
            const int xp = parse_int(rest.substr(0, mu_at));
            const int mp = parse_int(rest.substr(mu_at + kMu.size()));
            out += term(c, xp, mp);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<LaurentRational> coeffs_;
};

/// V_{m,n}(x) values: zero constant term except for the base case V_{0,0} = 1.
using MomentPolynomial = Polynomial;

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial scale(const Polynomial& p, const LaurentRational& c) { return p.scaled(c); }
inline Polynomial mul_by_x(const Polynomial& p) { return p.times_x(); }
inline Polynomial differentiate(const Polynomial& p) { return p.derivative(); }
inline double evaluate(const Polynomial& p, double x, double mu) { return p.evaluate(x, mu); }

}  // namespace fpa
