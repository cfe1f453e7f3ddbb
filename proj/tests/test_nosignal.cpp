#include <gtest/gtest.h>

#include <cmath>

#include <qspin/bell.hpp>
#include <qspin/eigen.hpp>
#include <qspin/nosignal.hpp>
#include <qspin/rng.hpp>
#include <qspin/spin.hpp>
#include <qspin/state.hpp>

using namespace qspin;

namespace {

DensityOp singlet_density() {
    const StateVector s = singlet();
    return make_density(outer(s.amps, s.amps), {2, 2});
}

std::vector<std::vector<cx>> columns_of(const Mat& u) {
    std::vector<std::vector<cx>> cols(u.cols, std::vector<cx>(u.rows));
    for (std::size_t j = 0; j < u.cols; ++j)
        for (std::size_t i = 0; i < u.rows; ++i) cols[j][i] = u(i, j);
    return cols;
}

}  // namespace

TEST(OutcomeGroups, PauliSplitsIntoTwoRankOneOutcomes) {
    const std::vector<OutcomeGroup> g = outcome_groups(sigma_z());
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(g[0].eigenvalue, -1.0, 1e-12);
    EXPECT_NEAR(g[1].eigenvalue, +1.0, 1e-12);

    Mat down(2, 2), up(2, 2);
    down(1, 1) = 1.0;
    up(0, 0) = 1.0;
    EXPECT_LT(max_diff(g[0].projector, down), 1e-12);
    EXPECT_LT(max_diff(g[1].projector, up), 1e-12);
}

TEST(OutcomeGroups, DegenerateSpectraClusterTogether) {
    const std::vector<OutcomeGroup> one = outcome_groups(Mat::identity(3));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0].eigenvalue, 1.0, 1e-12);
    EXPECT_LT(max_diff(one[0].projector, Mat::identity(3)), 1e-12);

    // squared spin-1 component: eigenvalue 0 once, eigenvalue 1 twice
    const Spin1 s = spin1_matrices();
    const std::vector<OutcomeGroup> g = outcome_groups(s.sz * s.sz);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(g[0].eigenvalue, 0.0, 1e-12);
    EXPECT_NEAR(g[1].eigenvalue, 1.0, 1e-12);
    EXPECT_NEAR(trace(g[0].projector).real(), 1.0, 1e-12);
    EXPECT_NEAR(trace(g[1].projector).real(), 2.0, 1e-12);
    EXPECT_LT(projector_residual(g[1].projector), 1e-12);
}

TEST(NoSignaling, SingletMarginalIsFlat) {
    const DensityOp rho = singlet_density();
    const std::vector<double> p = reduced_probabilities(rho, sigma_z());
    ASSERT_EQ(p.size(), 2u);
    EXPECT_NEAR(p[0], 0.5, 1e-13);
    EXPECT_NEAR(p[1], 0.5, 1e-13);
}

TEST(NoSignaling, JointThenSumMatchesReducedPath) {
    const DensityOp rho = singlet_density();
    for (double angle : {0.0, 0.4, 1.3, 2.9}) {
        const std::vector<double> viaJoint = joint_marginal_b(rho, direction_operator(angle), sigma_z());
        const std::vector<double> direct = reduced_probabilities(rho, sigma_z());
        ASSERT_EQ(viaJoint.size(), direct.size());
        for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_NEAR(viaJoint[i], direct[i], 1e-13);
    }
}

TEST(NoSignaling, SingletReportIsClean) {
    const DensityOp rho = singlet_density();
    const std::vector<Mat> choices{sigma_z(), sigma_x(), direction_operator(0.77), Mat::identity(2)};
    const NoSignalingReport rep = no_signaling_check(rho, choices, direction_operator(1.9));
    EXPECT_LT(rep.max_choice_discrepancy, 1e-12);
    EXPECT_LT(rep.max_path_discrepancy, 1e-12);
    ASSERT_EQ(rep.marginal.size(), 2u);
    EXPECT_NEAR(rep.marginal[0] + rep.marginal[1], 1.0, 1e-13);

    EXPECT_THROW(no_signaling_check(rho, {}, sigma_z()), error);
}

TEST(NoSignaling, HoldsForRandomStatesAndObservables) {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const bool wide = rep % 2 == 0;
        const std::vector<std::size_t> dims = wide ? std::vector<std::size_t>{2, 4} : std::vector<std::size_t>{2, 2};
        const DensityOp rho = random_density(rng, dims, 4);
        const std::vector<Mat> choices{random_hermitian(rng, dims[0]), random_hermitian(rng, dims[0])};
        const NoSignalingReport r = no_signaling_check(rho, choices, random_hermitian(rng, dims[1]));
        EXPECT_LT(r.max_choice_discrepancy, 1e-12);
        EXPECT_LT(r.max_path_discrepancy, 1e-12);
    }
}

TEST(ReducedState, ExplicitSummationMatchesPartialTrace) {
    Rng rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityOp rho = random_density(rng, {3, 2}, 4);
        const Mat z_basis = Mat::identity(3);
        EXPECT_LT(max_diff(reduced_in_basis(rho, columns_of(z_basis)), partial_trace(rho, {1}).mat), 1e-13);

        // any eigenbasis of a random observable gives the same matrix
        const EigResult e = eig_hermitian(random_hermitian(rng, 3));
        const BasisIndependenceReport bi =
            basis_independence(rho, {columns_of(z_basis), columns_of(e.vectors)});
        EXPECT_LT(bi.max_difference, 1e-13);
    }
}

TEST(ReducedState, RejectsBadBases) {
    Rng rng(33);
    const DensityOp rho = random_density(rng, {2, 2});

    const std::vector<cx> e0{1.0, 0.0}, e1{0.0, 1.0};
    EXPECT_NO_THROW(reduced_in_basis(rho, {e0, e1}));
    EXPECT_THROW(reduced_in_basis(rho, {e0}), error);
    EXPECT_THROW(reduced_in_basis(rho, {e0, e0}), error);

    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<cx> tilted{cx{r}, cx{r}};
    EXPECT_THROW(reduced_in_basis(rho, {e0, tilted}), error);

    EXPECT_THROW(basis_independence(rho, {}), error);
}
