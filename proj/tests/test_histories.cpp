#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <qspin/bell.hpp>
#include <qspin/eigen.hpp>
#include <qspin/histories.hpp>
#include <qspin/rng.hpp>
#include <qspin/spin.hpp>
#include <qspin/state.hpp>

using namespace qspin;

namespace {

Mat half_proj(const Mat& pauli, int sign) {
    return cx{0.5} * (Mat::identity(2) + cx{static_cast<double>(sign)} * pauli);
}

DensityOp ground() {
    Mat m(2, 2);
    m(0, 0) = 1.0;
    return make_density(std::move(m), {2});
}

// spin prepared along +z, measured along x and then along a second Pauli axis
HistoryFamily two_time_family(const Mat& second_axis) {
    std::vector<std::vector<Mat>> sets{{half_proj(sigma_x(), +1), half_proj(sigma_x(), -1)},
                                       {half_proj(second_axis, +1), half_proj(second_axis, -1)}};
    return make_family(ground(), identity_grid(2, 2), std::move(sets));
}

std::vector<Mat> eigenbasis_projectors(const Mat& h) {
    const EigResult e = eig_hermitian(h);
    std::vector<Mat> out;
    for (std::size_t k = 0; k < h.rows; ++k) {
        std::vector<cx> v(h.rows);
        for (std::size_t i = 0; i < h.rows; ++i) v[i] = e.vectors(i, k);
        out.push_back(outer(v, v));
    }
    return out;
}

}  // namespace

TEST(TimeGrid, Validation) {
    EXPECT_NO_THROW(validate(identity_grid(3, 2)));

    TimeGrid bad_order{{1.0, 0.5}, {Mat::identity(2), Mat::identity(2)}};
    EXPECT_THROW(validate(bad_order), error);

    TimeGrid mismatch{{1.0, 2.0}, {Mat::identity(2)}};
    EXPECT_THROW(validate(mismatch), error);

    TimeGrid not_unitary{{1.0}, {cx{2.0} * Mat::identity(2)}};
    EXPECT_THROW(validate(not_unitary), error);

    EXPECT_THROW(validate(TimeGrid{}), error);
}

TEST(Histories, SequenceProbabilities) {
    const DensityOp rho = ground();
    const std::vector<Mat> xz{half_proj(sigma_x(), +1), half_proj(sigma_z(), +1)};
    EXPECT_NEAR(sequence_prob(rho, identity_grid(2, 2), xz), 0.25, 1e-14);

    EXPECT_NEAR(sequence_prob(rho, identity_grid(1, 2), {half_proj(sigma_x(), +1)}), 0.5, 1e-15);
    EXPECT_NEAR(sequence_prob(rho, identity_grid(1, 2), {half_proj(sigma_z(), -1)}), 0.0, 1e-15);

    EXPECT_THROW(sequence_prob(rho, identity_grid(1, 2), {sigma_x()}), error);
    EXPECT_THROW(sequence_prob(rho, identity_grid(1, 2), {Mat::identity(3)}), error);
}

TEST(Histories, SpinFlipFamilyIsUniform) {
    const HistoryFamily f = two_time_family(sigma_z());
    EXPECT_EQ(history_count(f), 4u);

    const std::vector<History> hs = family_probabilities(f);
    ASSERT_EQ(hs.size(), 4u);
    double sum = 0.0;
    for (const History& h : hs) {
        EXPECT_NEAR(h.prob, 0.25, 1e-14);
        EXPECT_FALSE(h.zero);
        sum += h.prob;
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);

    // the four branch labels enumerate both axes in order
    EXPECT_EQ(hs[0].branch, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(hs[3].branch, (std::vector<std::size_t>{1, 1}));
}

TEST(Histories, RealInterferenceViolatesBothModes) {
    const HistoryFamily f = two_time_family(sigma_z());
    EXPECT_NEAR(consistency_matrix(f, ConsistencyMode::strong).max_violation, 0.25, 1e-14);
    EXPECT_NEAR(consistency_matrix(f, ConsistencyMode::weak).max_violation, 0.25, 1e-14);
}

TEST(Histories, ImaginaryInterferenceSeparatesModes) {
    // the crossed terms are purely imaginary here, so the weaker criterion
    // accepts the family while the stronger one rejects it
    const HistoryFamily f = two_time_family(sigma_y());
    EXPECT_NEAR(consistency_matrix(f, ConsistencyMode::strong).max_violation, 0.25, 1e-14);
    EXPECT_NEAR(consistency_matrix(f, ConsistencyMode::weak).max_violation, 0.0, 1e-15);
}

TEST(Histories, WeakNeverExceedsStrong) {
    Rng rng(27);
    for (int rep = 0; rep < 50; ++rep) {
        const DensityOp rho = random_density(rng, {2});
        std::vector<std::vector<Mat>> sets{eigenbasis_projectors(random_hermitian(rng, 2)),
                                           eigenbasis_projectors(random_hermitian(rng, 2))};
        const HistoryFamily f = make_family(rho, identity_grid(2, 2), std::move(sets));
        const double strong = consistency_matrix(f, ConsistencyMode::strong).max_violation;
        const double weak = consistency_matrix(f, ConsistencyMode::weak).max_violation;
        EXPECT_LE(weak, strong + 1e-15);
    }
}

TEST(Histories, EigenbasisFamilyIsConsistent) {
    Rng rng(28);
    for (const std::vector<std::size_t>& dims : {std::vector<std::size_t>{3}, std::vector<std::size_t>{2, 2}}) {
        const DensityOp rho = random_density(rng, dims, 4);
        TimeGrid grid{{0.4, 1.1}, {evolution_unitary(random_hermitian(rng, rho.dim()), 0.4),
                                   evolution_unitary(random_hermitian(rng, rho.dim()), 0.7)}};
        const HistoryFamily f = build_consistent_family(rho, grid);
        EXPECT_LT(consistency_matrix(f).max_violation, 1e-10);

        const std::vector<History> hs = family_probabilities(f);
        double sum = 0.0;
        std::vector<double> nonzero;
        for (const History& h : hs) {
            sum += h.prob;
            if (h.prob > 1e-9) {
                nonzero.push_back(h.prob);
                EXPECT_EQ(h.branch[0], h.branch[1]);  // only the diagonal branches survive
            }
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);

        // surviving probabilities are the spectrum of the initial state
        std::vector<double> eigs = eig_hermitian(rho.mat).values;
        std::sort(eigs.rbegin(), eigs.rend());
        std::sort(nonzero.rbegin(), nonzero.rend());
        for (std::size_t i = 0; i < nonzero.size(); ++i) EXPECT_NEAR(nonzero[i], eigs[i], 1e-10);
    }
}

TEST(CoarseGrain, MergingEverythingLeavesOneSureHistory) {
    const HistoryFamily f = two_time_family(sigma_z());
    const HistoryFamily merged = coarse_grain(f, {{{0, 1}}, {{0, 1}}});
    EXPECT_EQ(history_count(merged), 1u);
    const std::vector<History> hs = family_probabilities(merged);
    EXPECT_NEAR(hs[0].prob, 1.0, 1e-14);
}

TEST(CoarseGrain, RejectsBadGroupings) {
    const HistoryFamily f = two_time_family(sigma_z());
    using Groups = std::vector<std::vector<std::vector<std::size_t>>>;
    EXPECT_THROW(coarse_grain(f, Groups{{{0, 1}}}), error);                    // one grouping per time
    EXPECT_THROW(coarse_grain(f, Groups{{{0, 0}}, {{0, 1}}}), error);          // index grouped twice
    EXPECT_THROW(coarse_grain(f, Groups{{{0}}, {{0, 1}}}), error);             // does not cover
    EXPECT_THROW(coarse_grain(f, Groups{{{0, 2}}, {{0, 1}}}), error);          // out of range
    EXPECT_THROW(coarse_grain(f, Groups{{{0, 1}, {}}, {{0, 1}}}), error);      // empty group
}

TEST(CoarseGrain, EarlyTimeMergeExposesInterference) {
    const HistoryFamily f = two_time_family(sigma_z());
    const AdditivityReport rep = coarse_grain_additivity(f, {{{0, 1}}, {{0}, {1}}});
    EXPECT_NEAR(rep.max_abs_delta, 0.5, 1e-13);
    ASSERT_EQ(rep.deltas.size(), 2u);
    EXPECT_NEAR(rep.deltas[0], +0.5, 1e-13);
    EXPECT_NEAR(rep.deltas[1], -0.5, 1e-13);

    // each defect equals the crossed term of the matching interference split
    const std::vector<Mat> pieces{half_proj(sigma_x(), +1), half_proj(sigma_x(), -1)};
    for (int sign : {+1, -1}) {
        const InterferenceSplit sp = interference_split(ground(), pieces, half_proj(sigma_z(), sign));
        EXPECT_NEAR(rep.deltas[sign == +1 ? 0 : 1], sp.crossed.real(), 1e-13);
    }
}

TEST(CoarseGrain, FinalTimeMergeIsAlwaysAdditive) {
    for (const Mat& axis : {sigma_z(), sigma_y()}) {
        const HistoryFamily f = two_time_family(axis);
        const AdditivityReport rep = coarse_grain_additivity(f, {{{0}, {1}}, {{0, 1}}});
        EXPECT_LT(rep.max_abs_delta, 1e-13);
    }
}

TEST(CoarseGrain, ConsistentFamiliesStayAdditiveUnderAnyGrouping) {
    Rng rng(29);
    const DensityOp rho = random_density(rng, {3}, 4);
    const HistoryFamily f = build_consistent_family(rho, identity_grid(2, 3));
    const AdditivityReport rep = coarse_grain_additivity(f, {{{0, 2}, {1}}, {{0}, {1}, {2}}});
    EXPECT_LT(rep.max_abs_delta, 1e-10);
}

TEST(Interference, FrozenSplitOnTheFlippedBranch) {
    const std::vector<Mat> pieces{half_proj(sigma_x(), +1), half_proj(sigma_x(), -1)};
    const InterferenceSplit sp = interference_split(ground(), pieces, half_proj(sigma_z(), -1));
    EXPECT_NEAR(sp.amplitude_sum, 0.0, 1e-15);
    EXPECT_NEAR(sp.probability_sum, 0.5, 1e-14);
    EXPECT_NEAR(sp.crossed.real(), -0.5, 1e-14);
    EXPECT_NEAR(sp.crossed.imag(), 0.0, 1e-15);
}

TEST(Interference, SplitIdentityHoldsForRandomStates) {
    Rng rng(30);
    const std::vector<Mat> pieces{half_proj(sigma_x(), +1), half_proj(sigma_x(), -1)};
    for (int rep = 0; rep < 100; ++rep) {
        const DensityOp rho = random_density(rng, {2});
        const Mat final_proj = half_proj(direction_operator(rng.uniform(0.0, 2.0 * kPi)), +1);
        const InterferenceSplit sp = interference_split(rho, pieces, final_proj);
        EXPECT_NEAR(sp.amplitude_sum, sp.probability_sum + sp.crossed.real(), 1e-13);
    }

    EXPECT_THROW(interference_split(ground(), {}, half_proj(sigma_z(), +1)), error);
    EXPECT_THROW(interference_split(ground(), pieces, sigma_x()), error);
    const std::vector<Mat> overlapping{half_proj(sigma_x(), +1), half_proj(sigma_z(), +1)};
    EXPECT_THROW(interference_split(ground(), overlapping, half_proj(sigma_z(), +1)), error);
}

TEST(Family, ConstructionErrors) {
    std::vector<Mat> good{half_proj(sigma_z(), +1), half_proj(sigma_z(), -1)};

    // one projector set per time point
    EXPECT_THROW(make_family(ground(), identity_grid(2, 2), {good}), error);

    // incomplete set
    EXPECT_THROW(make_family(ground(), identity_grid(1, 2), {{half_proj(sigma_z(), +1)}}), error);

    // projector dimension differs from the state
    Mat p0(3, 3), p12(3, 3);
    p0(0, 0) = 1.0;
    p12(1, 1) = 1.0;
    p12(2, 2) = 1.0;
    EXPECT_THROW(make_family(ground(), identity_grid(1, 2), {{p0, p12}}), error);

    // mixed set sizes multiply up
    std::vector<Mat> z4;
    for (std::size_t k = 0; k < 4; ++k) {
        Mat p(4, 4);
        p(k, k) = 1.0;
        z4.push_back(std::move(p));
    }
    Mat top(4, 4), bottom(4, 4);
    top(0, 0) = top(1, 1) = 1.0;
    bottom(2, 2) = bottom(3, 3) = 1.0;
    const HistoryFamily f = make_family(make_density(cx{0.25} * Mat::identity(4), {2, 2}),
                                        identity_grid(2, 4), {z4, {top, bottom}});
    EXPECT_EQ(history_count(f), 8u);
}
