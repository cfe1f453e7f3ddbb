#pragma once

#include <cmath>
#include <utility>

#include "state.hpp"

namespace qspin {

// reduced two-branch state after the environment picked up one scattered
// mode per event: diagonal populations survive, the off-diagonal element is
// multiplied by every overlap <k-|k+>
inline DensityOp reduced_after_scattering(cx alpha, cx beta, const std::vector<cx>& overlaps,
                                          double tol = kDefaultTol) {
    require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol,
            "reduced_after_scattering: amplitudes not normalized");
    cx g = 1.0;
    for (const cx& o : overlaps) {
        require(std::abs(o) <= 1.0 + tol, "reduced_after_scattering: overlap modulus exceeds one");
        g *= o;
    }
    Mat m(2, 2);
    m(0, 0) = std::norm(alpha);
    m(1, 1) = std::norm(beta);
    m(0, 1) = alpha * std::conj(beta) * g;
    m(1, 0) = std::conj(m(0, 1));
    return make_density(std::move(m), {2}, std::max(tol, 1e-9));
}

// two scattered modes with <k_minus|k_plus> = g, in a two-dimensional mode space
inline std::pair<std::vector<cx>, std::vector<cx>> photon_modes(cx g, double tol = kDefaultTol) {
    require(std::abs(g) <= 1.0 + tol, "photon_modes: overlap modulus exceeds one");
    const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
    return {{g, cx{rest}}, {cx{1.0}, cx{0.0}}};  // (k_plus, k_minus)
}

// explicit atoms+photons ket: alpha|+..+>|k+ k+ ..> + beta|-..->|k- k- ..>
inline StateVector entangled_env_state(std::size_t n_atoms, cx alpha, cx beta,
                                       const std::vector<cx>& overlaps, double tol = kDefaultTol) {
    require(n_atoms >= 1, "entangled_env_state: need at least one atom");
    require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol,
            "entangled_env_state: amplitudes not normalized");
    StateVector plus_branch = basis_state(std::vector<std::size_t>(n_atoms, 2), 0);
    StateVector minus_branch = basis_state(std::vector<std::size_t>(n_atoms, 2),
                                           (std::size_t{1} << n_atoms) - 1);
    for (const cx& g : overlaps) {
        const auto [kp, km] = photon_modes(g, tol);
        plus_branch = tensor(plus_branch, make_state(kp, {2}));
        minus_branch = tensor(minus_branch, make_state(km, {2}));
    }
    StateVector out = plus_branch;
    for (std::size_t i = 0; i < out.dim(); ++i)
        out.amps[i] = alpha * plus_branch.amps[i] + beta * minus_branch.amps[i];
    return out;
}

// off-diagonal magnitude after 0..n_max identical scattering events
inline std::vector<double> decay_curve(cx g, std::size_t n_max, cx alpha = cx{1.0 / 1.4142135623730951},
                                       cx beta = cx{1.0 / 1.4142135623730951}) {
    std::vector<double> curve;
    curve.reserve(n_max + 1);
    std::vector<cx> overlaps;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const DensityOp rho = reduced_after_scattering(alpha, beta, overlaps);
        curve.push_back(std::abs(rho.mat(0, 1)));
        overlaps.push_back(g);
    }
    return curve;
}

}  // namespace qspin
