#pragma once

#include <cmath>

#include "rng.hpp"
#include "spin.hpp"
#include "state.hpp"

namespace qspin {

inline constexpr double kPi = 3.141592653589793238462643383279;

// (|+,-> - |-,+>)/sqrt(2)
inline StateVector singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return make_state({0.0, r, -r, 0.0}, {2, 2});
}

struct PairProbs {
    double pp, pm, mp, mm;
};

namespace detail {

inline std::vector<cx> pair_ket(double a, int sa, double b, int sb) {
    const std::vector<cx> ka = (sa == +1) ? plus_eigket(a) : minus_eigket(a);
    const std::vector<cx> kb = (sb == +1) ? plus_eigket(b) : minus_eigket(b);
    return {ka[0] * kb[0], ka[0] * kb[1], ka[1] * kb[0], ka[1] * kb[1]};
}

inline void require_two_spins(const std::vector<std::size_t>& dims) {
    require(dims.size() == 2 && dims[0] == 2 && dims[1] == 2, "expected a two-spin system");
}

}  // namespace detail

inline PairProbs pair_probs(const StateVector& psi, double a, double b) {
    detail::require_two_spins(psi.factor_dims);
    const StateVector s = normalized(psi);
    auto p = [&](int sa, int sb) { return std::norm(inner(detail::pair_ket(a, sa, b, sb), s.amps)); };
    return PairProbs{p(+1, +1), p(+1, -1), p(-1, +1), p(-1, -1)};
}

inline PairProbs pair_probs(const DensityOp& rho, double a, double b) {
    detail::require_two_spins(rho.factor_dims);
    auto p = [&](int sa, int sb) {
        const std::vector<cx> k = detail::pair_ket(a, sa, b, sb);
        return inner(k, act(rho.mat, k)).real();
    };
    return PairProbs{p(+1, +1), p(+1, -1), p(-1, +1), p(-1, -1)};
}

inline double correlation(const PairProbs& p) { return p.pp + p.mm - p.pm - p.mp; }

inline double correlation(const StateVector& psi, double a, double b) {
    return correlation(pair_probs(psi, a, b));
}

inline double correlation(const DensityOp& rho, double a, double b) {
    return correlation(pair_probs(rho, a, b));
}

struct ChshSettings {
    double a, a_prime, b, b_prime;
};

// E(a,b) + E(a,b') - E(a',b) + E(a',b')
template <typename State>
inline double chsh_value(const State& st, const ChshSettings& s) {
    return correlation(st, s.a, s.b) + correlation(st, s.a, s.b_prime) -
           correlation(st, s.a_prime, s.b) + correlation(st, s.a_prime, s.b_prime);
}

struct ChshResult {
    ChshSettings settings;
    double value;  // signed; the optimizer maximizes |value|
};

namespace detail {

// golden-section maximization on [lo, hi]
template <typename F>
inline std::pair<double, double> golden_max(F f, double lo, double hi, int iters) {
    const double gr = 0.6180339887498948482;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    return (f1 > f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace detail

// coarse grid over all four angles, then coordinate-wise golden-section
// refinement around the best cell
template <typename State>
inline ChshResult chsh_optimize(const State& st, std::size_t grid = 64) {
    require(grid >= 8, "chsh_optimize: grid must be >= 8");

    std::vector<double> ang(grid);
    for (std::size_t i = 0; i < grid; ++i) ang[i] = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(grid);

    // E is a function of one angle per side, so the grid scan only needs the
    // pairwise correlation table, not grid^4 state evaluations
    std::vector<std::vector<double>> e(grid, std::vector<double>(grid));
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) e[i][j] = correlation(st, ang[i], ang[j]);

    std::size_t bi = 0, bip = 0, bj = 0, bjp = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t ip = 0; ip < grid; ++ip)
            for (std::size_t j = 0; j < grid; ++j) {
                const double partial = e[i][j] - e[ip][j];
                for (std::size_t jp = 0; jp < grid; ++jp) {
                    const double m = partial + e[i][jp] + e[ip][jp];
                    if (std::abs(m) > best) {
                        best = std::abs(m);
                        bi = i;
                        bip = ip;
                        bj = j;
                        bjp = jp;
                    }
                }
            }

    ChshSettings s{ang[bi], ang[bip], ang[bj], ang[bjp]};
    const double step = 2.0 * kPi / static_cast<double>(grid);
    double* coord[4] = {&s.a, &s.a_prime, &s.b, &s.b_prime};
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (double* c : coord) {
            const double center = *c;
            auto f = [&](double x) {
                *c = x;
                return std::abs(chsh_value(st, s));
            };
            const auto [x, fx] = detail::golden_max(f, center - step, center + step, 40);
            *c = x;
            (void)fx;
        }
    }
    return ChshResult{s, chsh_value(st, s)};
}

// --- local hidden variable models -----------------------------------------

// deterministic responses, one +-1 entry per analyzer setting
struct DeterministicResponse {
    int a, a_prime, b, b_prime;
};

struct DeterministicLambda {
    double weight;
    DeterministicResponse r;
};

struct LocalDeterministicModel {
    std::vector<DeterministicLambda> lambdas;
};

inline void validate(const LocalDeterministicModel& m) {
    require(!m.lambdas.empty(), "deterministic model: no hidden variables");
    double tot = 0.0;
    for (const auto& l : m.lambdas) {
        require(l.weight >= 0.0, "deterministic model: negative weight");
        for (int v : {l.r.a, l.r.a_prime, l.r.b, l.r.b_prime})
            require(v == +1 || v == -1, "deterministic model: response must be +-1");
        tot += l.weight;
    }
    require(tot > 0.0, "deterministic model: weights sum to zero");
}

// weighted average of the per-lambda combination; each lambda contributes
// exactly +-2, and the num/den evaluation keeps |result| <= 2 in floating
// point as well
inline double lhv_chsh(const LocalDeterministicModel& m) {
    validate(m);
    double num = 0.0, den = 0.0;
    for (const auto& l : m.lambdas) {
        const int v = l.r.a * l.r.b + l.r.a * l.r.b_prime - l.r.a_prime * l.r.b + l.r.a_prime * l.r.b_prime;
        require(v == 2 || v == -2, "deterministic model: combination not +-2");
        num += l.weight * static_cast<double>(v / 2);
        den += l.weight;
    }
    return 2.0 * (num / den);
}

// all 16 response tables with equal weight
inline LocalDeterministicModel uniform_strategies() {
    LocalDeterministicModel m;
    for (int mask = 0; mask < 16; ++mask) {
        auto bit = [&](int k) { return (mask >> k) & 1 ? +1 : -1; };
        m.lambdas.push_back({1.0 / 16.0, DeterministicResponse{bit(0), bit(1), bit(2), bit(3)}});
    }
    return m;
}

inline LocalDeterministicModel random_deterministic_model(Rng& rng, std::size_t max_lambdas = 8) {
    LocalDeterministicModel m;
    const std::size_t k = 1 + rng.integer(max_lambdas);
    for (std::size_t i = 0; i < k; ++i)
        m.lambdas.push_back({rng.uniform() + 1e-6,
                             DeterministicResponse{rng.coin(), rng.coin(), rng.coin(), rng.coin()}});
    return m;
}

// per lambda, each side carries a single-spin density operator; the response
// to an analyzer angle is its expectation, a number in [-1, 1]
struct StochasticLambda {
    double weight;
    DensityOp rho_n, rho_p;
};

struct StochasticLocalModel {
    std::vector<StochasticLambda> lambdas;
};

inline void validate(const StochasticLocalModel& m) {
    require(!m.lambdas.empty(), "stochastic model: no hidden variables");
    double tot = 0.0;
    for (const auto& l : m.lambdas) {
        require(l.weight >= 0.0, "stochastic model: negative weight");
        require(l.rho_n.dim() == 2 && l.rho_p.dim() == 2, "stochastic model: sides must be single spins");
        tot += l.weight;
    }
    require(tot > 0.0, "stochastic model: weights sum to zero");
}

inline double stochastic_response(const DensityOp& rho, double angle) {
    return trace(rho.mat * direction_operator(angle)).real();
}

inline double stochastic_local_chsh(const StochasticLocalModel& m, const ChshSettings& s) {
    validate(m);
    double num = 0.0, den = 0.0;
    for (const auto& l : m.lambdas) {
        const double an = stochastic_response(l.rho_n, s.a);
        const double anp = stochastic_response(l.rho_n, s.a_prime);
        const double bp = stochastic_response(l.rho_p, s.b);
        const double bpp = stochastic_response(l.rho_p, s.b_prime);
        num += l.weight * (an * bp + an * bpp - anp * bp + anp * bpp);
        den += l.weight;
    }
    return num / den;
}

inline DensityOp random_bloch_density(Rng& rng) {
    double nx = rng.gaussian(), ny = rng.gaussian(), nz = rng.gaussian();
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz) + 1e-300;
    const double r = rng.uniform();
    nx *= r / n;
    ny *= r / n;
    nz *= r / n;
    Mat m(2, 2);
    m(0, 0) = 0.5 * (1.0 + nz);
    m(1, 1) = 0.5 * (1.0 - nz);
    m(0, 1) = 0.5 * cx{nx, -ny};
    m(1, 0) = 0.5 * cx{nx, ny};
    return make_density(std::move(m), {2});
}

inline StochasticLocalModel random_stochastic_model(Rng& rng, std::size_t max_lambdas = 6) {
    StochasticLocalModel m;
    const std::size_t k = 1 + rng.integer(max_lambdas);
    for (std::size_t i = 0; i < k; ++i)
        m.lambdas.push_back({rng.uniform() + 1e-6, random_bloch_density(rng), random_bloch_density(rng)});
    return m;
}

// --- separable decompositions with possibly signed coefficients ------------

struct SeparableTerm {
    double c;
    DensityOp rho_n, rho_p;
};

struct SeparableDecomposition {
    std::vector<SeparableTerm> terms;
};

inline void validate(const SeparableDecomposition& d) {
    require(!d.terms.empty(), "separable decomposition: empty");
    for (const auto& t : d.terms)
        require(t.rho_n.dim() == 2 && t.rho_p.dim() == 2, "separable decomposition: sides must be single spins");
}

inline double coefficient_sum(const SeparableDecomposition& d) {
    double s = 0.0;
    for (const auto& t : d.terms) s += t.c;
    return s;
}

inline Mat reconstruct(const SeparableDecomposition& d) {
    validate(d);
    Mat m(4, 4);
    for (const auto& t : d.terms) m = m + cx{t.c} * kron(t.rho_n.mat, t.rho_p.mat);
    return m;
}

// correlation carried through the product form term by term
inline double separable_correlation(const SeparableDecomposition& d, double a, double b) {
    validate(d);
    double e = 0.0;
    for (const auto& t : d.terms) e += t.c * stochastic_response(t.rho_n, a) * stochastic_response(t.rho_p, b);
    return e;
}

inline double separable_chsh(const SeparableDecomposition& d, const ChshSettings& s) {
    return separable_correlation(d, s.a, s.b) + separable_correlation(d, s.a, s.b_prime) -
           separable_correlation(d, s.a_prime, s.b) + separable_correlation(d, s.a_prime, s.b_prime);
}

// signed 16-term product expansion of the singlet: an x-basis resolution of
// the identity plus the three Pauli products split into eigenprojectors,
// coefficients all +-1/4 and summing to one
inline SeparableDecomposition singlet_separable_expansion() {
    auto proj = [](const Mat& pauli, int sign) {
        Mat m = Mat::identity(2);
        m = cx{0.5} * (m + cx{static_cast<double>(sign)} * pauli);
        return make_density(std::move(m), {2});
    };
    SeparableDecomposition d;
    for (int s : {+1, -1})
        for (int t : {+1, -1}) d.terms.push_back({0.25, proj(sigma_x(), s), proj(sigma_x(), t)});
    for (const Mat& pauli : {sigma_x(), sigma_y(), sigma_z()})
        for (int s : {+1, -1})
            for (int t : {+1, -1})
                d.terms.push_back({-0.25 * s * t, proj(pauli, s), proj(pauli, t)});
    return d;
}

inline SeparableDecomposition random_convex_separable(Rng& rng, std::size_t max_terms = 6) {
    SeparableDecomposition d;
    const std::size_t k = 1 + rng.integer(max_terms);
    std::vector<double> w(k);
    double tot = 0.0;
    for (auto& x : w) {
        x = rng.uniform() + 1e-6;
        tot += x;
    }
    for (std::size_t i = 0; i < k; ++i)
        d.terms.push_back({w[i] / tot, random_bloch_density(rng), random_bloch_density(rng)});
    return d;
}

}  // namespace qspin
