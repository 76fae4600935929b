#include <gtest/gtest.h>

#include <sstream>

#include "nsskit/config_io.hpp"
#include "nsskit/model.hpp"

using namespace nsskit;

namespace {

ProblemConfig delta_config(Complex z, double a) {
    ProblemConfig c;
    c.potential = PotentialSpec::delta(z, a);
    c.gamma = 1.0;
    return c;
}

}  // namespace

TEST(ValidateConfig, AcceptsCanonicalDelta) {
    auto c = delta_config({0.0, 2.0}, 0.5);
    c.ode_tol = 1e-10;
    EXPECT_TRUE(validate_config(c).empty());
}

TEST(ValidateConfig, RejectsSpikeOnBoundary) {
    auto v = validate_config(delta_config({0.0, 2.0}, 0.0));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "a must lie strictly inside (0,1)");
    EXPECT_FALSE(validate_config(delta_config({0.0, 2.0}, 1.0)).empty());
}

TEST(ValidateConfig, RejectsNonPositiveTolerance) {
    auto c = delta_config({0.0, 2.0}, 0.5);
    c.ode_tol = 0.0;
    auto v = validate_config(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "ode_tol must be positive");
}

TEST(ValidateConfig, CollectsEveryViolation) {
    auto c = delta_config({NAN, 0.0}, 1.5);
    c.max_steps = 0;
    c.gamma = INFINITY;
    c.profile = NonlinearityProfile::power(-1.0);
    EXPECT_EQ(validate_config(c).size(), 5u);
}

TEST(ValidateConfig, ZeroCouplingIsAdmitted) {
    auto c = delta_config({0.0, 2.0}, 0.3);
    c.gamma = 0.0;
    EXPECT_TRUE(validate_config(c).empty());
}

TEST(Profile, BuiltinValues) {
    EXPECT_EQ(NonlinearityProfile::kerr()(0.0), 0.0);
    EXPECT_EQ(NonlinearityProfile::kerr()(2.0), 4.0);
    EXPECT_EQ(NonlinearityProfile::power(3.0)(0.0), 0.0);
    EXPECT_DOUBLE_EQ(NonlinearityProfile::power(1.5)(4.0), 8.0);
    EXPECT_EQ(NonlinearityProfile::constant(-0.7)(0.0), -0.7);
    EXPECT_EQ(NonlinearityProfile::constant(-0.7)(12.0), -0.7);
}

TEST(Profile, CustomAndSign) {
    auto f = NonlinearityProfile::custom([](double amp) { return amp - 1.0; }, "shifted");
    EXPECT_EQ(f(3.0), 2.0);
    EXPECT_EQ(f.sign(), 0);
    EXPECT_EQ(f.name(), "shifted");
    EXPECT_EQ(NonlinearityProfile::kerr().sign(), 1);
    EXPECT_EQ(NonlinearityProfile::constant(-2.0).sign(), -1);
    EXPECT_FALSE(NonlinearityProfile::constant(1.0).amplitude_dependent());
}

TEST(Model, MirroredMovesSpike) {
    auto c = mirrored(delta_config({0.1, 2.0}, 0.2));
    EXPECT_DOUBLE_EQ(c.potential.position, 0.8);
    EXPECT_TRUE(c.potential.spike_between(1.0, 0.5));
    EXPECT_FALSE(c.potential.spike_between(0.0, 0.8));
}

TEST(ConfigIo, ParsesFullFile) {
    std::istringstream in(R"(# sample
potential.kind = delta
potential.re_z = 1e-4
potential.im_z = 3.14
potential.a = 0.25
gamma = -1
profile.kind = power
profile.p = 3
ode_tol = 1e-9
max_steps = 5000
)");
    auto c = parse_config(in);
    EXPECT_TRUE(c.potential.is_delta());
    EXPECT_EQ(c.potential.strength, Complex(1e-4, 3.14));
    EXPECT_EQ(c.potential.position, 0.25);
    EXPECT_EQ(c.gamma, -1.0);
    EXPECT_EQ(c.profile.kind(), NonlinearityProfile::Kind::Power);
    EXPECT_EQ(c.profile.parameter(), 3.0);
    EXPECT_EQ(c.ode_tol, 1e-9);
    EXPECT_EQ(c.max_steps, 5000);
}

TEST(ConfigIo, DefaultsToZeroPotentialKerr) {
    std::istringstream in("gamma = 0.5\n");
    auto c = parse_config(in);
    EXPECT_FALSE(c.potential.is_delta());
    EXPECT_EQ(c.profile.kind(), NonlinearityProfile::Kind::Kerr);
    EXPECT_EQ(c.ode_tol, default_ode_tol);
    EXPECT_EQ(c.max_steps, default_max_steps);
}

TEST(ConfigIo, RejectsUnknownKeyByName) {
    std::istringstream in("gamma = 1\npotential.width = 3\n");
    try {
        parse_config(in);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("potential.width"), std::string::npos);
    }
}

TEST(ConfigIo, RejectsMalformedValues) {
    for (const char* text : {"gamma = one\n", "gamma\n", "ode_tol = -1\n", "max_steps = 2.5\n",
                             "potential.kind = delta\npotential.a = 1\n", "profile.kind = cubic\n",
                             "gamma = 1\ngamma = 2\n", "profile.p = 2\n", "potential.a = 0.5\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(parse_config(in), ConfigError) << text;
    }
}

TEST(ConfigIo, WriteThenParseIsIdentity) {
    ProblemConfig c = delta_config({-3.25e-4, 6.283185307179586}, 1.0 / 3.0);
    c.profile = NonlinearityProfile::constant(-0.125);
    c.gamma = 0.1;
    c.ode_tol = 3e-11;
    std::istringstream in(to_config_text(c));
    auto back = parse_config(in);
    EXPECT_EQ(back.potential.strength, c.potential.strength);
    EXPECT_EQ(back.potential.position, c.potential.position);
    EXPECT_EQ(back.gamma, c.gamma);
    EXPECT_EQ(back.profile.parameter(), c.profile.parameter());
    EXPECT_EQ(back.ode_tol, c.ode_tol);
}
