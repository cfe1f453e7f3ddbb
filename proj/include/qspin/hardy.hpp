#pragma once

#include <cmath>

#include "bell.hpp"
#include "state.hpp"

namespace qspin {

// two-spin state sin(t)|++> - cos(t)(|+-> + |-+>), normalized
struct HardyState {
    double theta;
    StateVector state;
};

inline HardyState hardy_state(double theta) {
    require(theta > 0.0 && theta < kPi / 2.0, "hardy_state: theta must lie strictly inside (0, pi/2)");
    const cx st{std::sin(theta)}, ct{std::cos(theta)};
    StateVector s = normalized(make_state({st, -ct, -ct, 0.0}, {2, 2}));
    return HardyState{theta, std::move(s)};
}

// the direction singled out by the construction: cos(t)|+> + sin(t)|->
inline std::vector<cx> hardy_direction(double theta) {
    return {cx{std::cos(theta)}, cx{std::sin(theta)}};
}

struct HardyExclusions {
    double r_plus_u;   // |<+, u|psi>|
    double r_u_plus;   // |<u, +|psi>|
    double r_minus_minus;
};

inline double max_residual(const HardyExclusions& e) {
    return std::max({e.r_plus_u, e.r_u_plus, e.r_minus_minus});
}

inline HardyExclusions verify_exclusions(const StateVector& psi, double theta) {
    require(psi.dim() == 4, "verify_exclusions: two-spin state expected");
    const StateVector s = normalized(psi);
    const std::vector<cx> plus{1.0, 0.0}, minus{0.0, 1.0};
    const std::vector<cx> u = hardy_direction(theta);
    auto overlap = [&](const std::vector<cx>& a, const std::vector<cx>& b) {
        const std::vector<cx> k{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
        return std::abs(inner(k, s.amps));
    };
    return HardyExclusions{overlap(plus, u), overlap(u, plus), overlap(minus, minus)};
}

inline HardyExclusions verify_exclusions(const HardyState& h) { return verify_exclusions(h.state, h.theta); }

// closed form s(1-s)^2/(2-s) with s = sin^2 theta
inline double hardy_prob(double theta) {
    require(theta >= 0.0 && theta <= kPi / 2.0, "hardy_prob: theta out of range");
    const double s = sqr(std::sin(theta));
    return s * sqr(1.0 - s) / (2.0 - s);
}

// the same probability read off the state: both primed analyzers along u
inline double hardy_prob_state(const HardyState& h) {
    const std::vector<cx> u = hardy_direction(h.theta);
    const std::vector<cx> uu{u[0] * u[0], u[0] * u[1], u[1] * u[0], u[1] * u[1]};
    return std::norm(inner(uu, h.state.amps));
}

struct HardyMax {
    double theta_star;
    double p_star;
};

// grid scan plus golden-section refinement of the closed form
inline HardyMax hardy_maximize(std::size_t grid = 256, int iters = 80) {
    require(grid >= 8, "hardy_maximize: grid must be >= 8");
    double best_t = 0.0, best_p = -1.0;
    for (std::size_t i = 1; i < grid; ++i) {
        const double t = (kPi / 2.0) * static_cast<double>(i) / static_cast<double>(grid);
        const double p = hardy_prob(t);
        if (p > best_p) {
            best_p = p;
            best_t = t;
        }
    }
    const double step = (kPi / 2.0) / static_cast<double>(grid);
    const auto [t, p] = detail::golden_max([](double x) { return hardy_prob(x); },
                                           best_t - step, best_t + step, iters);
    return HardyMax{t, p};
}

}  // namespace qspin
