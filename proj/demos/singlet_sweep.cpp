// prints the two-spin coincidence table over a full turn, CSV on stdout

#include <cstdio>

#include <qspin/bell.hpp>
#include <qspin/io.hpp>

int main() {
    using namespace qspin;
    const StateVector s = singlet();
    std::printf("theta_deg,p_pp,p_pm,p_mp,p_mm,E\n");
    for (int deg = 0; deg <= 360; ++deg) {
        const double theta = 2.0 * kPi * deg / 360.0;
        const PairProbs p = pair_probs(s, theta, 0.0);
        std::printf("%d,%s,%s,%s,%s,%s\n", deg, fmt15(p.pp).c_str(), fmt15(p.pm).c_str(),
                    fmt15(p.mp).c_str(), fmt15(p.mm).c_str(), fmt15(correlation(p)).c_str());
    }
    return 0;
}
