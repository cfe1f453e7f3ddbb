#include <gtest/gtest.h>

#include <cmath>

#include <qspin/bell.hpp>
#include <qspin/ghz.hpp>
#include <qspin/rng.hpp>
#include <qspin/spin.hpp>
#include <qspin/state.hpp>

using namespace qspin;

TEST(Ghz3, AmplitudePlacement) {
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector plus = ghz3();
    ASSERT_EQ(plus.amps.size(), 8u);
    EXPECT_NEAR(std::abs(plus.amps[0] - cx{r}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(plus.amps[7] - cx{r}), 0.0, 1e-15);
    for (std::size_t i = 1; i < 7; ++i) EXPECT_EQ(plus.amps[i], cx{0.0});

    const StateVector minus = ghz3(cx{-1.0});
    EXPECT_NEAR(std::abs(minus.amps[7] + cx{r}), 0.0, 1e-15);

    // complex eta is normalized away
    const StateVector tilted = ghz3(cx{0.0, 2.0});
    double n2 = 0.0;
    for (const cx& a : tilted.amps) n2 += std::norm(a);
    EXPECT_NEAR(n2, 1.0, 1e-14);
}

TEST(Ghz3, MixedProductsAreEigenstates) {
    for (double eta : {+1.0, -1.0}) {
        const StateVector g = ghz3(cx{eta});
        const std::vector<std::vector<Axis>> mixed{{axis_x(), axis_y(), axis_y()},
                                                   {axis_y(), axis_x(), axis_y()},
                                                   {axis_y(), axis_y(), axis_x()}};
        for (const auto& axes : mixed) {
            const ProductExpectation pe = product_op_expectation(g, axes);
            EXPECT_TRUE(pe.is_eigen);
            EXPECT_NEAR(pe.eigenvalue, -eta, 1e-12);
            EXPECT_NEAR(pe.expectation, -eta, 1e-12);
        }
        const ProductExpectation xxx = product_op_expectation(g, {axis_x(), axis_x(), axis_x()});
        EXPECT_TRUE(xxx.is_eigen);
        EXPECT_NEAR(xxx.eigenvalue, eta, 1e-12);
    }
}

TEST(Ghz3, NonEigenstateIsFlagged) {
    const StateVector up = basis_state({2, 2, 2}, 0);
    const ProductExpectation pe = product_op_expectation(up, {axis_x(), axis_x(), axis_x()});
    EXPECT_FALSE(pe.is_eigen);
    EXPECT_NEAR(pe.expectation, 0.0, 1e-15);
    EXPECT_EQ(pe.eigenvalue, 0.0);

    const ProductExpectation zz = product_op_expectation(up, {axis_z(), axis_z(), axis_z()});
    EXPECT_TRUE(zz.is_eigen);
    EXPECT_NEAR(zz.eigenvalue, 1.0, 1e-15);
}

TEST(Ghz3, ApplySiteOpAddressing) {
    // sigma_x on one site moves |000> to the matching basis index
    const std::vector<std::pair<std::size_t, std::size_t>> moves{{0, 4}, {1, 2}, {2, 1}};
    for (const auto& [site, idx] : moves) {
        StateVector s = basis_state({2, 2, 2}, 0);
        apply_site_op(s, site, sigma_x());
        EXPECT_NEAR(std::abs(s.amps[idx] - cx{1.0}), 0.0, 1e-15) << "site " << site;
    }
    StateVector s = basis_state({2, 2, 2}, 0);
    EXPECT_THROW(apply_site_op(s, 3, sigma_x()), error);
    EXPECT_THROW(apply_site_op(s, 0, Mat(3, 3)), error);
}

TEST(Ghz3, InplaneAxisAtZeroIsX) {
    const StateVector g = ghz3(cx{-1.0});
    const ProductExpectation a = product_op_expectation(g, {axis_inplane(0.0), axis_y(), axis_y()});
    const ProductExpectation b = product_op_expectation(g, {axis_x(), axis_y(), axis_y()});
    EXPECT_NEAR(a.expectation, b.expectation, 1e-13);
}

TEST(Ghz3, LocalRealistTableContradiction) {
    const LocalRealistParity rep = local_realist_parity();
    EXPECT_EQ(rep.assignments, 64);
    EXPECT_EQ(rep.satisfying, 8);
    EXPECT_EQ(rep.forced_product, +1);
    EXPECT_NEAR(rep.quantum_xxx, -1.0, 1e-12);
    EXPECT_TRUE(rep.contradiction);
}

TEST(AllOrNothing, StatePlacementAndValidation) {
    const AllOrNothingState a{4, cx{0.6}, cx{0.0, 0.8}};
    const StateVector s = aon_state(a);
    ASSERT_EQ(s.amps.size(), 16u);
    EXPECT_NEAR(std::abs(s.amps[0] - cx{0.6}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amps[15] - cx{0.0, 0.8}), 0.0, 1e-15);
    for (std::size_t i = 1; i < 15; ++i) EXPECT_EQ(s.amps[i], cx{0.0});

    EXPECT_THROW(aon_state(AllOrNothingState{1, cx{1.0}, cx{0.0}}), error);
    EXPECT_THROW(aon_state(AllOrNothingState{13, cx{1.0}, cx{0.0}}), error);
    EXPECT_THROW(aon_state(AllOrNothingState{3, cx{1.0}, cx{1.0}}), error);
}

TEST(AllOrNothing, EnumeratedCorrelationMatchesClosedForm) {
    Rng rng(21);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const double r = rng.uniform();
            const double pa = rng.uniform(0.0, 2.0 * kPi), pb = rng.uniform(0.0, 2.0 * kPi);
            const AllOrNothingState a{n, std::sqrt(r) * std::exp(cx{0.0, pa}),
                                      std::sqrt(1.0 - r) * std::exp(cx{0.0, pb})};
            std::vector<double> thetas(n);
            for (double& t : thetas) t = rng.uniform(-kPi, kPi);
            EXPECT_NEAR(transverse_correlation(a, thetas), aon_closed_form(a, thetas), 1e-12);
        }
    }
}

TEST(AllOrNothing, MaximalCorrelationIsCosineOfPhaseSum) {
    Rng rng(22);
    const double phi = 0.3;
    for (std::size_t n = 2; n <= 5; ++n) {
        const AllOrNothingState a = aon_max_corr(n, phi);
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<double> thetas(n);
            double sum = 0.0;
            for (double& t : thetas) {
                t = rng.uniform(-kPi, kPi);
                sum += t;
            }
            EXPECT_NEAR(transverse_correlation(a, thetas), std::cos(sum - phi), 1e-12);
        }
    }
}

TEST(AllOrNothing, CoherenceIsAllOrNothing) {
    const std::size_t n = 5;
    const StateVector s = aon_state(aon_max_corr(n, 0.7));
    EXPECT_NEAR(subsystem_coherence(s, n), 0.5, 1e-14);
    for (std::size_t k = 1; k < n; ++k) EXPECT_NEAR(subsystem_coherence(s, k), 0.0, 1e-15);
    EXPECT_THROW(subsystem_coherence(s, 0), error);
    EXPECT_THROW(subsystem_coherence(s, n + 1), error);
}

TEST(AllOrNothing, ProductStateKeepsPartialCoherence) {
    // contrast case: a product of transverse kets loses nothing under restriction
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<std::array<cx, 2>> kets(4, {cx{r}, cx{r}});
    const StateVector p = product_state(kets);
    for (std::size_t k = 1; k <= 4; ++k)
        EXPECT_NEAR(subsystem_coherence(p, k), std::pow(0.5, static_cast<double>(k)), 1e-14);

    const StateVector pair = product_state({{cx{0.6}, cx{0.8}}, {cx{1.0}, cx{0.0}}});
    const StateVector direct = tensor(make_state({0.6, 0.8}, {2}), basis_state({2}, 0));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(pair.amps[i] - direct.amps[i]), 0.0, 1e-15);
}

TEST(AllOrNothing, QuantumVariesWhereLocalModelsCannot) {
    const std::size_t n = 4;
    const AllOrNothingState a = aon_max_corr(n, 0.3);
    double lo = 1.0, hi = -1.0;
    for (int i = 0; i < 64; ++i) {
        const double sum = 2.0 * kPi * i / 64.0;
        const double e = transverse_correlation(a, {sum, 0.0, 0.0, 0.0});
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    EXPECT_GT(hi - lo, 1.9);

    Rng rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        const NSiteLocalModel m = random_nsite_model(rng, n);
        std::vector<double> t1(n), t2(n);
        for (std::size_t i = 0; i < n; ++i) {
            t1[i] = rng.uniform(-kPi, kPi);
            t2[i] = rng.uniform(-kPi, kPi);
        }
        const double e1 = nsite_product_expectation(m, t1);
        const double e2 = nsite_product_expectation(m, t2);
        EXPECT_EQ(e1, e2);  // angle independence, exactly
        EXPECT_LE(std::abs(e1), 1.0);
    }
}

TEST(AllOrNothing, NSiteModelValidation) {
    const std::vector<double> thetas{0.1, 0.2, 0.3};
    EXPECT_THROW(nsite_product_expectation(NSiteLocalModel{}, thetas), error);

    NSiteLocalModel single;
    single.lambdas.push_back({1.0, {+1, -1, -1}});
    EXPECT_EQ(nsite_product_expectation(single, thetas), 1.0);
    single.lambdas[0].outputs = {+1, -1, +1};
    EXPECT_EQ(nsite_product_expectation(single, thetas), -1.0);

    NSiteLocalModel wrong;
    wrong.lambdas.push_back({1.0, {+1, -1}});
    EXPECT_THROW(nsite_product_expectation(wrong, thetas), error);

    NSiteLocalModel zero;
    zero.lambdas.push_back({1.0, {+1, 0, -1}});
    EXPECT_THROW(nsite_product_expectation(zero, thetas), error);

    NSiteLocalModel neg;
    neg.lambdas.push_back({-1.0, {+1, +1, +1}});
    EXPECT_THROW(nsite_product_expectation(neg, thetas), error);
}
