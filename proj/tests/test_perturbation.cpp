#include <gtest/gtest.h>

#include <random>

#include "nsskit/perturbation.hpp"

using namespace nsskit;
using namespace nsskit::perturbation;

TEST(Coefficients, Examples) {
    EXPECT_LT(std::abs(coeff_A(pi, 0.5) + 4.0), 1e-14);
    EXPECT_LT(std::abs(coeff_A(2.3, 0.2) - coeff_A(2.3, 0.8)), 1e-14);
    for (double k : {0.3, 1.0, 4.0, 17.0}) EXPECT_EQ(coeff_B(k, 0.5), Complex(0.0));
    EXPECT_LT(std::abs(coeff_B(1.7, 0.3) + coeff_B(1.7, 0.7)), 1e-14);
}

TEST(Coefficients, SmallKScaling) {
    // A ~ 2ik and B ~ -2k^2 (1-2a) as k -> 0
    for (double a : {0.2, 0.45, 0.9})
        for (double k = 1e-6; k <= 1e-2; k *= 10.0) {
            EXPECT_NEAR(std::abs(coeff_A(k, a)) / k, 2.0, 1e-2) << a << " " << k;
            EXPECT_NEAR(std::abs(coeff_B(k, a)) / (k * k), 2.0 * std::abs(1.0 - 2.0 * a), 1e-2) << a << " " << k;
        }
}

TEST(FirstOrder, ZExamples) {
    EXPECT_EQ(z_first_order(1.3, 0.4, 0.0), Complex(0.0, 2.6));
    EXPECT_LT(std::abs(z_first_order(pi, 0.5, 4.0 * pi * pi) - Complex(0.0, -6.0 * pi)), 1e-12);
}

TEST(FirstOrder, XiExamples) {
    const Complex n{0.4, 0.9};
    EXPECT_LT(std::abs(xi1_first_order(2.1, 0.3, 0.0, n) - std::exp(I * 2.1 * 0.4) * n), 1e-15);
    EXPECT_LT(std::abs(xi1_first_order(2.1, 0.5, 0.3, n) - n), 1e-15);
}

TEST(FirstOrder, LocusExamples) {
    EXPECT_NEAR(gamma_f_of_k(pi / 2, 0.5, 1e-4), -(pi / 2) * 1e-4, 1e-16);
    EXPECT_NEAR(s_of_k(pi / 2, 0.5, 1e-4), pi + 1e-4, 1e-15);
    EXPECT_EQ(gamma_f_of_k(2.0, 0.3, 0.0), 0.0);
    EXPECT_EQ(s_of_k(2.0, 0.3, 0.0), 4.0);
    EXPECT_EQ(gamma_f_of_k(2.0, 0.25, 1e-4), gamma_f_of_k(2.0, 0.75, 1e-4));
    EXPECT_THROW(gamma_f_of_k(pi, 0.3, 1e-4), AsymptoteProximity);
    EXPECT_THROW(s_of_k(1.5 * pi, 1.0 / 3.0, 1e-4), AsymptoteProximity);
}

TEST(FirstOrder, ParityOnRandomSamples) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uk(0.05, 10 * pi), ua(0.01, 0.99);
    std::uniform_int_distribution<int> uj(1, 1023);
    for (int i = 0; i < 200; ++i) {
        const double k = uk(rng);
        // dyadic a: 1-a is exact, so the mirrored value is bit-identical
        const double d = uj(rng) / 1024.0;
        if (std::abs(denominator(k, d)) > 1e-3) {
            EXPECT_EQ(gamma_f_of_k(k, d, 1e-4), gamma_f_of_k(k, 1.0 - d, 1e-4));
            EXPECT_EQ(s_of_k(k, d, 1e-4), s_of_k(k, 1.0 - d, 1e-4));
        }
        // general a: rounding of 1-a is amplified by the conditioning of cos
        const double a = ua(rng);
        if (std::abs(denominator(k, a)) < 1e-3) continue;
        const double cond = 1.0 + k * std::abs(std::tan(k * (1.0 - 2.0 * a)));
        EXPECT_NEAR(gamma_f_of_k(k, a, 1e-4), gamma_f_of_k(k, 1.0 - a, 1e-4),
                    1e-14 * cond * std::abs(gamma_f_of_k(k, a, 1e-4)));
        EXPECT_NEAR(s_of_k(k, a, 1e-4), s_of_k(k, 1.0 - a, 1e-4), 1e-14 * cond * s_of_k(k, a, 1e-4));
    }
}

TEST(FirstOrder, TwoPresentationsAgree) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uk(0.05, 10 * pi), ua(0.01, 0.99), ur(-1e-3, 1e-3);
    int checked = 0;
    while (checked < 20) {
        const double k = uk(rng), a = ua(rng), r = ur(rng);
        if (!validity(k, a, r).valid) continue;
        ++checked;
        const Complex z = z_first_order(k, a, gamma_f_of_k(k, a, r));
        EXPECT_NEAR(z.real(), r, 1e-12 * std::abs(r));
        EXPECT_NEAR(z.imag(), s_of_k(k, a, r), 1e-12 * std::abs(s_of_k(k, a, r)));
    }
}

TEST(Validity, Examples) {
    auto v = validity(pi / 2, 0.5, 1e-4);
    EXPECT_TRUE(v.valid);
    EXPECT_NEAR(v.margin, 1e-4 / (pi / 2), 1e-12);
    EXPECT_FALSE(validity(pi, 0.5, 1e-4).valid);
    EXPECT_FALSE(validity(2.0, 0.3, 0.2).valid);
    EXPECT_TRUE(validity(2.0, 0.3, 0.0).valid);
}

TEST(Evaluate, RecordsViolations) {
    auto ok = evaluate(pi / 2, 0.5, 1e-4);
    EXPECT_TRUE(ok.valid);
    EXPECT_EQ(ok.violation, PerturbativeNss::Violation::None);
    auto near = evaluate(pi, 0.5, 1e-4);
    EXPECT_FALSE(near.valid);
    EXPECT_EQ(near.violation, PerturbativeNss::Violation::TooCloseToAsymptote);
    EXPECT_TRUE(std::isnan(near.gamma_f));
    auto big = evaluate(2.0, 0.3, 0.2);
    EXPECT_EQ(big.violation, PerturbativeNss::Violation::RNotSmall);
    EXPECT_STREQ(to_string(big.violation), "r_not_small");
    EXPECT_TRUE(std::isfinite(big.s));
}

TEST(Asymptotes, Families) {
    auto half = asymptotes(0.5, 4 * pi);
    ASSERT_EQ(half.size(), 4u);
    for (int m = 0; m < 4; ++m) EXPECT_DOUBLE_EQ(half[m], pi * (m + 1));

    auto third = asymptotes(1.0 / 3.0, 10 * pi);
    std::vector<double> expect;
    for (int m = 1; m <= 10; ++m) expect.push_back(pi * m);
    for (double q : {1.5, 4.5, 7.5}) expect.push_back(q * pi);
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(third.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(third[i], expect[i], 1e-12 * expect[i]);

    // second family is the odd multiples of pi and merges into the first
    auto quarter = asymptotes(0.25, 10 * pi);
    ASSERT_EQ(quarter.size(), 10u);
    for (int m = 0; m < 10; ++m) EXPECT_EQ(quarter[m], pi * (m + 1));
}

TEST(Asymptotes, DenominatorVanishes) {
    for (double a : {0.2, 1.0 / 3.0, 0.9})
        for (double k : asymptotes(a, 6 * pi)) EXPECT_LT(std::abs(denominator(k, a)), 1e-12);
}
