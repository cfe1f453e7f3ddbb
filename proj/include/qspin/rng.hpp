#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "matrix.hpp"
#include "state.hpp"

namespace qspin {

inline constexpr std::uint64_t kDefaultSeed = 0xB311;

// mt19937_64 is bit-exact everywhere; the double mapping is written out by
// hand so reports stay byte-identical no matter what the stdlib distributions
// decide to do
struct Rng {
    std::mt19937_64 eng;
    std::uint64_t seed;

    explicit Rng(std::uint64_t s = kDefaultSeed) : eng(s), seed(s) {}

    static const char* name() { return "mt19937_64"; }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t integer(std::uint64_t bound) { return eng() % bound; }

    int coin() { return (eng() & 1u) ? +1 : -1; }

    // Box-Muller, deterministic
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    cx gaussian_cx() {
        const double re = gaussian();
        const double im = gaussian();
        return cx{re, im};
    }
};

inline std::vector<cx> random_unit_vector(Rng& rng, std::size_t dim) {
    std::vector<cx> v(dim);
    for (auto& x : v) x = rng.gaussian_cx();
    const double n = std::sqrt(norm2(v));
    for (auto& x : v) x /= n;
    return v;
}

inline StateVector random_state(Rng& rng, std::vector<std::size_t> factor_dims) {
    const std::size_t dim = dims_product(factor_dims);
    return make_state(random_unit_vector(rng, dim), std::move(factor_dims));
}

inline Mat random_hermitian(Rng& rng, std::size_t dim) {
    Mat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cx v = 0.5 * rng.gaussian_cx();
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// convex mixture of k random pure states
inline DensityOp random_density(Rng& rng, std::vector<std::size_t> factor_dims, std::size_t k = 3) {
    const std::size_t dim = dims_product(factor_dims);
    std::vector<double> w(k);
    double tot = 0.0;
    for (auto& x : w) {
        x = rng.uniform() + 1e-3;
        tot += x;
    }
    Mat m(dim, dim);
    for (std::size_t c = 0; c < k; ++c) {
        const std::vector<cx> v = random_unit_vector(rng, dim);
        m = m + (cx{w[c] / tot}) * outer(v, v);
    }
    return make_density(std::move(m), std::move(factor_dims));
}

}  // namespace qspin
