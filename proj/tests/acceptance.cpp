#include <gtest/gtest.h>

#include <cstdio>

#include <qspin/verify.hpp>

using namespace qspin;

namespace {

// the battery runs once; every test reads the same report
const VerificationReport& report() {
    static const VerificationReport rep = run_verification(kDefaultSeed);
    return rep;
}

void check(int id) {
    for (const CriterionResult& c : report().criteria) {
        if (c.id != id) continue;
        std::printf("[criterion %2d] %s  %s\n", c.id, c.passed ? "PASS" : "FAIL", c.name.c_str());
        std::fflush(stdout);
        EXPECT_TRUE(c.passed) << c.detail.dump(2);
        return;
    }
    FAIL() << "criterion " << id << " missing from the report";
}

}  // namespace

TEST(Acceptance, Criterion01ChshOptimizerReachesQuantumMaximum) { check(1); }
TEST(Acceptance, Criterion02SingletCorrelationLaw) { check(2); }
TEST(Acceptance, Criterion03LocalModelsRespectBoundOfTwo) { check(3); }
TEST(Acceptance, Criterion04ThreeSpinParityContradiction) { check(4); }
TEST(Acceptance, Criterion05AllOrNothingCosineLaw) { check(5); }
TEST(Acceptance, Criterion06HardyMaximum) { check(6); }
TEST(Acceptance, Criterion07OperatorSquareColoring) { check(7); }
TEST(Acceptance, Criterion08ScatteringDecoherence) { check(8); }
TEST(Acceptance, Criterion09HistoryFamilies) { check(9); }
TEST(Acceptance, Criterion10NoSignalingMarginals) { check(10); }
TEST(Acceptance, Criterion11ByteIdenticalReports) { check(11); }

TEST(Acceptance, AllCriteriaPresent) {
    EXPECT_EQ(report().criteria.size(), 11u);
    EXPECT_EQ(report().seed, kDefaultSeed);
}
