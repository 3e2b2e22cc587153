#include "fpa/laurent.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fpa {
namespace {

Polynomial T(Rational c, int xp, int mp) { return Polynomial::term(std::move(c), xp, mp); }

const Polynomial kMeanArea = T(Rational(1, 2), 2, -1) + T(Rational(1, 2), 1, -2);
const Polynomial kTauArea = T(Rational(1, 2), 3, -2) + T(1, 2, -3) + T(1, 1, -4);

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
    EXPECT_EQ(to_string(Rational(4, 2)), "2");
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(LaurentRational, CanonicalForm) {
    LaurentRational a(Rational(1, 2), -1);
    a -= LaurentRational(Rational(1, 2), -1);
    EXPECT_TRUE(a.is_zero());
    EXPECT_TRUE(a.terms().empty());
    EXPECT_EQ(LaurentRational(0).terms().size(), 0U);
    const LaurentRational prod = LaurentRational(Rational(1, 2), -2) * LaurentRational(Rational(2, 3), 5);
    EXPECT_EQ(prod, LaurentRational(Rational(1, 3), 3));
}

TEST(Polynomial, AddExamples) {
    EXPECT_TRUE(add(Polynomial{}, Polynomial{}).is_zero());
    EXPECT_EQ(add(T(1, 1, -1), T(1, 1, -1)), T(2, 1, -1));
    EXPECT_EQ(add(kMeanArea, T(Rational(-1, 2), 1, -2)), T(Rational(1, 2), 2, -1));
    // cancellation of the leading term lowers the degree
    EXPECT_EQ(add(kMeanArea, T(Rational(-1, 2), 2, -1)).degree(), 1);
}

TEST(Polynomial, ScaleExamples) {
    EXPECT_EQ(scale(T(1, 1, -1), LaurentRational(-2)), T(-2, 1, -1));
    EXPECT_EQ(scale(T(1, 1, -1), LaurentRational(Rational(1, 2), -2)), T(Rational(1, 2), 1, -3));
    EXPECT_TRUE(scale(Polynomial{}, LaurentRational(Rational(7, 3), 4)).is_zero());
    EXPECT_TRUE(scale(kTauArea, LaurentRational(0)).is_zero());
}

TEST(Polynomial, MulByXExamples) {
    EXPECT_EQ(mul_by_x(T(1, 1, -1)), T(1, 2, -1));
    EXPECT_EQ(mul_by_x(kMeanArea), T(Rational(1, 2), 3, -1) + T(Rational(1, 2), 2, -2));
    EXPECT_TRUE(mul_by_x(Polynomial{}).is_zero());
    EXPECT_EQ(mul_by_x(kTauArea).degree(), kTauArea.degree() + 1);
}

TEST(Polynomial, DifferentiateExamples) {
    EXPECT_EQ(differentiate(T(1, 1, -1)), T(1, 0, -1));
    EXPECT_EQ(differentiate(kTauArea), T(Rational(3, 2), 2, -2) + T(2, 1, -3) + T(1, 0, -4));
    EXPECT_TRUE(differentiate(Polynomial{}).is_zero());
    EXPECT_FALSE(differentiate(kTauArea).has_zero_constant());
}

TEST(Polynomial, EvaluateExamples) {
    EXPECT_DOUBLE_EQ(evaluate(T(1, 1, -1), 1.0, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(evaluate(kMeanArea, 1.0, 1.0), 1.0);
    EXPECT_EQ(evaluate(kTauArea, 0.0, 3.7), 0.0);
    EXPECT_THROW(evaluate(kTauArea, 1.0, 0.0), std::domain_error);
    EXPECT_THROW(evaluate(kTauArea, 1.0, -1.0), std::domain_error);
    EXPECT_EQ(kTauArea.evaluate_exact(1, 1), Rational(5, 2));
    EXPECT_EQ(kMeanArea.evaluate_exact(Rational(1, 3), 2), Rational(1, 36) + Rational(1, 24));
}

TEST(Polynomial, TextFormat) {
    EXPECT_EQ(kTauArea.to_text(), "(1/2)*x^3*mu^-2 + (1)*x^2*mu^-3 + (1)*x^1*mu^-4");
    EXPECT_EQ(Polynomial::constant(LaurentRational(1)).to_text(), "1");
    EXPECT_EQ(Polynomial{}.to_text(), "0");
    EXPECT_EQ(Polynomial::parse_text("(1/2)*x^3*mu^-2 + (1)*x^2*mu^-3 + (1)*x^1*mu^-4"), kTauArea);
    EXPECT_EQ(Polynomial::parse_text("1"), Polynomial::constant(LaurentRational(1)));
    EXPECT_THROW(Polynomial::parse_text("(1/2)*y^3*mu^-2"), std::invalid_argument);
    EXPECT_THROW(Polynomial::parse_text("(1/2)*x^3"), std::invalid_argument);
    EXPECT_THROW(Polynomial::parse_text(""), std::invalid_argument);
}

// Property tests over random small polynomials.

// Coefficientwise absolute value; bounds the rounding error of evaluation.
Polynomial absolute(const Polynomial& p) {
    std::vector<LaurentRational> out;
    for (const auto& c : p.coefficients()) {
        LaurentRational a;
        for (const auto& [k, v] : c.terms()) a += LaurentRational(abs(v), k);
        out.push_back(a);
    }
    return Polynomial(std::move(out));
}

class PolynomialProperties : public ::testing::Test {
protected:
    std::mt19937_64 rng{20240611};
    static constexpr int kTrials = 300;
};

TEST_F(PolynomialProperties, RingAxioms) {
    for (int i = 0; i < kTrials; ++i) {
        const Polynomial p = oracle::random_polynomial(rng);
        const Polynomial q = oracle::random_polynomial(rng);
        const Polynomial r = oracle::random_polynomial(rng);
        const LaurentRational c = oracle::random_laurent(rng);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ((p + q) + r, p + (q + r));
        EXPECT_EQ(scale(p + q, c), scale(p, c) + scale(q, c));
        EXPECT_TRUE((p - p).is_zero());
    }
}

TEST_F(PolynomialProperties, ProductRule) {
    for (int i = 0; i < kTrials; ++i) {
        const Polynomial p = oracle::random_polynomial(rng);
        EXPECT_EQ(differentiate(mul_by_x(p)), p + mul_by_x(differentiate(p)));
    }
}

TEST_F(PolynomialProperties, EvaluationIsHomomorphism) {
    std::uniform_int_distribution<int> small(1, 9);
    for (int i = 0; i < kTrials; ++i) {
        const Polynomial p = oracle::random_polynomial(rng);
        const Polynomial q = oracle::random_polynomial(rng);
        const Rational x(small(rng), small(rng));
        const Rational mu(small(rng), small(rng));
        EXPECT_EQ((p + q).evaluate_exact(x, mu), p.evaluate_exact(x, mu) + q.evaluate_exact(x, mu));

        const double xd = to_double(x);
        const double mud = to_double(mu);
        const double lhs = (p + q).evaluate(xd, mud);
        const double rhs = p.evaluate(xd, mud) + q.evaluate(xd, mud);
        const double magnitude = absolute(p).evaluate(xd, mud) + absolute(q).evaluate(xd, mud);
        EXPECT_NEAR(lhs, rhs, 32 * std::numeric_limits<double>::epsilon() * magnitude);
    }
}

TEST_F(PolynomialProperties, CanonicalAndTextRoundTrip) {
    for (int i = 0; i < kTrials; ++i) {
        const Polynomial p = oracle::random_polynomial(rng) + oracle::random_polynomial(rng);
        if (!p.is_zero()) {
            EXPECT_FALSE(p.coefficients().back().is_zero());
        }
        for (const auto& c : p.coefficients()) {
            for (const auto& [k, v] : c.terms()) EXPECT_NE(v, 0);
        }
        EXPECT_EQ(Polynomial::parse_text(p.to_text()), p) << p.to_text();
    }
}

}  // namespace
}  // namespace fpa
