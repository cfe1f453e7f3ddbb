// draws a random mixed state, builds the history family from its eigenbasis
// carried through two evolution steps, and reports the branch probabilities

#include <cstdio>
#include <cstdlib>

#include <qspin/histories.hpp>
#include <qspin/rng.hpp>

int main(int argc, char** argv) {
    using namespace qspin;
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 0) : kDefaultSeed;
    Rng rng(seed);

    const DensityOp rho = random_density(rng, {4}, 4);
    TimeGrid grid{{1.0, 2.0}, {evolution_unitary(random_hermitian(rng, 4), 0.6),
                               evolution_unitary(random_hermitian(rng, 4), 0.9)}};
    const HistoryFamily fam = build_consistent_family(rho, grid);

    std::printf("seed 0x%llx, %zu histories\n", static_cast<unsigned long long>(seed), history_count(fam));
    double sum = 0.0;
    for (const History& h : family_probabilities(fam)) {
        sum += h.prob;
        if (h.zero) continue;
        std::printf("  branch");
        for (std::size_t b : h.branch) std::printf(" %zu", b);
        std::printf("  p = %.15g\n", h.prob);
    }
    std::printf("probability sum %.15g\n", sum);
    std::printf("max consistency violation %.3e\n",
                consistency_matrix(fam, ConsistencyMode::strong).max_violation);
    return 0;
}
