#include <gtest/gtest.h>

#include <cmath>

#include <qspin/hardy.hpp>
#include <qspin/rng.hpp>

using namespace qspin;

TEST(Hardy, StateIsNormalizedAndPinnedToPlane) {
    for (double t : {0.2, 0.666, 1.3}) {
        const HardyState h = hardy_state(t);
        double n2 = 0.0;
        for (const cx& a : h.state.amps) n2 += std::norm(a);
        EXPECT_NEAR(n2, 1.0, 1e-14);
        // no |--> component by construction
        EXPECT_EQ(h.state.amps[3], cx{0.0});
    }
    EXPECT_THROW(hardy_state(0.0), error);
    EXPECT_THROW(hardy_state(kPi / 2.0), error);
    EXPECT_THROW(hardy_state(-0.4), error);
}

TEST(Hardy, DirectionIsUnit) {
    for (double t : {0.1, 0.7, 1.4}) {
        const std::vector<cx> u = hardy_direction(t);
        EXPECT_NEAR(std::norm(u[0]) + std::norm(u[1]), 1.0, 1e-15);
    }
}

TEST(Hardy, ThreeExclusionsHoldExactly) {
    for (double t : {0.3, 0.666, 1.2}) {
        const HardyExclusions e = verify_exclusions(hardy_state(t));
        EXPECT_LT(e.r_plus_u, 1e-15);
        EXPECT_LT(e.r_u_plus, 1e-15);
        EXPECT_LT(e.r_minus_minus, 1e-15);
        EXPECT_LT(max_residual(e), 1e-15);
    }
    EXPECT_THROW(verify_exclusions(basis_state({2}, 0), 0.3), error);
}

TEST(Hardy, ClosedFormMatchesStateProbability) {
    Rng rng(24);
    for (int k = 0; k < 200; ++k) {
        const double t = rng.uniform(1e-3, kPi / 2.0 - 1e-3);
        const HardyState h = hardy_state(t);
        EXPECT_NEAR(hardy_prob_state(h), hardy_prob(t), 1e-13);
    }
    EXPECT_NEAR(hardy_prob(0.0), 0.0, 1e-300);
    EXPECT_NEAR(hardy_prob(kPi / 2.0), 0.0, 1e-30);
    EXPECT_THROW(hardy_prob(-0.1), error);
    EXPECT_THROW(hardy_prob(kPi / 2.0 + 0.1), error);
}

TEST(Hardy, MaximumMatchesAlgebraicValue) {
    // p* = (5 sqrt 5 - 11)/2 at sin^2 theta* = (3 - sqrt 5)/2
    const double p_star = (5.0 * std::sqrt(5.0) - 11.0) / 2.0;
    const double theta_star = std::asin(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0));
    EXPECT_NEAR(p_star, 0.0901699437494742, 1e-15);

    const HardyMax m = hardy_maximize();
    EXPECT_NEAR(m.p_star, p_star, 1e-9);
    EXPECT_NEAR(m.theta_star, theta_star, 1e-6);
    EXPECT_THROW(hardy_maximize(7), error);
}

TEST(Hardy, MaximumDominatesTheWholeCurve) {
    const HardyMax m = hardy_maximize();
    for (int i = 1; i < 400; ++i) {
        const double t = (kPi / 2.0) * i / 400.0;
        EXPECT_LE(hardy_prob(t), m.p_star + 1e-12);
    }
}
