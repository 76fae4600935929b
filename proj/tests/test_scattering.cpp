#include <gtest/gtest.h>

#include "nsskit/perturbation.hpp"
#include "nsskit/scattering.hpp"
#include "oracles.hpp"

using namespace nsskit;

namespace {

ProblemConfig delta(Complex z, double a, double gamma = 0.0) {
    ProblemConfig c;
    c.potential = PotentialSpec::delta(z, a);
    c.gamma = gamma;
    return c;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(JostLeft, FreePlaneWave) {
    auto j = jost_left(ProblemConfig{}, pi, 1.0);
    EXPECT_LT(std::abs(j.xi_at_1 + 1.0), 1e-9);
    EXPECT_LT(std::abs(j.f_plus), 1e-8);
    EXPECT_LT(std::abs(j.f_minus - Complex(0.0, 2.0 * pi)), 1e-8);
    EXPECT_EQ(j.f_plus, j.dxi_at_1 + I * pi * j.xi_at_1);
    EXPECT_EQ(j.f_minus, j.dxi_at_1 - I * pi * j.xi_at_1);
}

TEST(JostLeft, LinearSingularityAtTwoIk) {
    for (double a : {0.2, 0.5, 0.7})
        for (double k : {1.0, 2.0, 5.0}) {
            const Complex n = std::polar(1.7, 0.3);
            auto j = jost_left(delta(2.0 * I * k, a), k, n);
            EXPECT_LT(std::abs(j.f_minus), 1e-8 * k * std::abs(n)) << a << " " << k;
        }
}

TEST(JostLeft, TailsMatchBoundaryData) {
    auto j = jost_left(delta({0.2, 0.7}, 0.4, 0.3), 2.0, Complex(0.5, 0.2));
    EXPECT_EQ(j.tail(0.0), j.n_minus);
    EXPECT_LT(std::abs(j.tail(1.0) - j.xi_at_1), 1e-15);
    EXPECT_THROW(j.tail(0.5), ContractViolation);
}

TEST(JostRight, FreePlaneWave) {
    const double k = pi;
    auto j = jost_right(ProblemConfig{}, k, 1.0);
    EXPECT_LT(std::abs(j.zeta_at_0 - std::exp(-I * k)), 1e-9);
    EXPECT_LT(std::abs(j.g_minus), 1e-8);
    EXPECT_LT(std::abs(j.g_plus - 2.0 * I * k * std::exp(-I * k)), 1e-8);
    EXPECT_LT(std::abs(j.tail(0.0) - j.zeta_at_0), 1e-15);
}

TEST(JostRight, LinearSingularityAtTwoIk) {
    for (double a : {0.2, 0.5, 0.7}) {
        auto j = jost_right(delta(2.0 * I * 3.0, a), 3.0, 1.0);
        EXPECT_LT(std::abs(j.g_plus), 1e-8 * 3.0);
    }
}

TEST(JostRight, IsParityImageOfJostLeft) {
    // zeta(x) = xi_P(1-x) with xi_P the left solution for the mirrored config.
    for (double gamma : {0.0, 0.4, -0.7}) {
        auto c = delta({0.3, 1.2}, 0.27, gamma);
        const double k = 2.2;
        const Complex n{0.8, -0.3};
        auto right = jost_right(c, k, n);
        auto left = jost_left(mirrored(c), k, n);
        EXPECT_LT(rel(right.g_plus, -left.f_minus), 1e-8);
        EXPECT_LT(rel(right.g_minus, -left.f_plus), 1e-8);
        EXPECT_LT(rel(right.zeta_at_0, left.xi_at_1), 1e-8);
    }
}

TEST(Amplitudes, FreeIsReflectionless) {
    auto amp = scatter(ProblemConfig{}, {1.0, 1.0, 1.0});
    EXPECT_LT(std::abs(amp.r_left), 1e-9);
    EXPECT_LT(std::abs(amp.r_right), 1e-9);
    EXPECT_NEAR(std::abs(amp.t_left), 1.0, 1e-9);
    EXPECT_NEAR(std::abs(amp.t_right), 1.0, 1e-9);
}

TEST(Amplitudes, LinearDeltaClosedForms) {
    for (double a : {0.2, 0.5, 0.65})
        for (double k : {0.6, 2.0, 7.5})
            for (Complex z : {Complex(1.0, 0.0), Complex(-0.3, 2.0), Complex(0.5, -4.0)}) {
                auto amp = scatter(delta(z, a), {k, 1.0, 1.0});
                const Complex d = 2.0 * I * k - z;
                EXPECT_LT(rel(amp.t_left, 2.0 * I * k / d), 1e-8);
                EXPECT_LT(rel(amp.t_right, 2.0 * I * k / d), 1e-8);
                EXPECT_LT(rel(amp.r_left, z * std::exp(2.0 * I * k * a) / d), 1e-8);
                EXPECT_LT(rel(amp.r_right, z * std::exp(-2.0 * I * k * a) / d), 1e-8);
                // independent matching oracle
                auto ref = oracle::linear_delta_amplitudes(k, z, a);
                EXPECT_LT(rel(amp.r_left, ref.r_left), 1e-8);
                EXPECT_LT(rel(amp.t_left, ref.t_left), 1e-8);
                EXPECT_LT(rel(amp.r_right, ref.r_right), 1e-8);
                EXPECT_LT(rel(amp.t_right, ref.t_right), 1e-8);
            }
}

TEST(Amplitudes, IndependentOfIncidentAmplitudeWhenLinear) {
    auto c = delta({0.4, 1.1}, 0.35);
    auto one = scatter(c, {2.5, 1.0, 1.0});
    auto other = scatter(c, {2.5, Complex(3.0, -2.0), Complex(0.01, 0.2)});
    EXPECT_LT(rel(other.r_left, one.r_left), 1e-9);
    EXPECT_LT(rel(other.t_left, one.t_left), 1e-9);
    EXPECT_LT(rel(other.r_right, one.r_right), 1e-9);
    EXPECT_LT(rel(other.t_right, one.t_right), 1e-9);
}

TEST(Amplitudes, ResonanceGrowthAndDivergence) {
    const double k = 2.0;
    for (double eps : {1e-2, 1e-4}) {
        auto amp = scatter(delta(2.0 * I * k - eps, 0.5), {k, 1.0, 1.0});
        EXPECT_NEAR(std::abs(amp.t_left) * eps / (2.0 * k), 1.0, 1e-5);
    }
    try {
        scatter(delta(2.0 * I * k, 0.5), {k, 1.0, 1.0});
        FAIL() << "expected DivergentAmplitude";
    } catch (const DivergentAmplitude& e) {
        EXPECT_EQ(e.which, "G+");
        EXPECT_LT(e.magnitude, 1e-12 * k);
    }
}

TEST(JostLeft, LinearityWhenGammaIsZero) {
    auto c = delta({0.2, -0.9}, 0.6);
    const Complex m{-1.3, 0.4};
    auto base = jost_left(c, 3.1, 1.0);
    auto scaled = jost_left(c, 3.1, m);
    EXPECT_LT(rel(scaled.f_minus, m * base.f_minus), 1e-9);
    EXPECT_LT(rel(scaled.f_plus, m * base.f_plus), 1e-9);
}

TEST(JostLeft, PhaseCovariance) {
    auto c = delta({0.3, 1.4}, 0.4, 0.8);
    const double k = 1.9;
    const Complex n = 0.9;
    auto base = jost_left(c, k, n);
    for (double theta : {pi / 7, pi / 2, 1.0}) {
        const Complex ph = std::polar(1.0, theta);
        auto rot = jost_left(c, k, ph * n);
        EXPECT_LT(rel(rot.xi_at_1, ph * base.xi_at_1), 1e-9) << theta;
        EXPECT_LT(rel(rot.f_minus, ph * base.f_minus), 1e-9) << theta;
        EXPECT_LT(rel(rot.f_plus, ph * base.f_plus), 1e-9) << theta;
    }
}

TEST(JostLeft, FirstOrderValueAtSingularity) {
    // z from the first-order formula, Kerr with gamma f = gamma |N|^2.
    const double k = 2.0, a = 0.3;
    for (double gf : {1e-3, -1e-3}) {
        const Complex z = perturbation::z_first_order(k, a, gf);
        auto c = delta(z, a, gf);
        auto j = jost_left(c, k, 1.0);
        const Complex expect = perturbation::xi1_first_order(k, a, gf, 1.0);
        EXPECT_LT(std::abs(j.xi_at_1 - expect), 1e-5);
        // residual is second order
        EXPECT_LT(std::abs(j.f_minus) / k, 1e-5);
    }
}

TEST(JostLeft, ContractChecks) {
    EXPECT_THROW(jost_left(ProblemConfig{}, 0.0, 1.0), ContractViolation);
    EXPECT_THROW(jost_left(ProblemConfig{}, 1.0, 0.0), ContractViolation);
    EXPECT_THROW(jost_right(ProblemConfig{}, -1.0, 1.0), ContractViolation);
}
