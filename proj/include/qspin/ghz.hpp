#pragma once

#include <array>
#include <bit>
#include <cmath>

#include "rng.hpp"
#include "spin.hpp"
#include "state.hpp"

namespace qspin {

// (|+++> + eta|--->)/sqrt(1+|eta|^2)
inline StateVector ghz3(cx eta = cx{1.0}) {
    const double n = std::sqrt(1.0 + std::norm(eta));
    std::vector<cx> amps(8);
    amps[0] = 1.0 / n;
    amps[7] = eta / n;
    return make_state(std::move(amps), {2, 2, 2});
}

// one analyzer axis per site: a Pauli label or an angle in the Oxy plane
struct Axis {
    enum class Kind { x, y, z, inplane };
    Kind kind = Kind::x;
    double theta = 0.0;
};

inline Axis axis_x() { return Axis{Axis::Kind::x, 0.0}; }
inline Axis axis_y() { return Axis{Axis::Kind::y, 0.0}; }
inline Axis axis_z() { return Axis{Axis::Kind::z, 0.0}; }
inline Axis axis_inplane(double theta) { return Axis{Axis::Kind::inplane, theta}; }

inline Mat axis_matrix(const Axis& ax) {
    switch (ax.kind) {
        case Axis::Kind::x: return sigma_x();
        case Axis::Kind::y: return sigma_y();
        case Axis::Kind::z: return sigma_z();
        case Axis::Kind::inplane: return inplane_operator(ax.theta);
    }
    throw error("axis_matrix: bad axis");
}

// act with a 2x2 operator on one site of an n-qubit register
inline void apply_site_op(StateVector& s, std::size_t site, const Mat& op) {
    require(site < s.factor_dims.size(), "apply_site_op: site out of range");
    require(s.factor_dims[site] == 2 && op.rows == 2 && op.cols == 2, "apply_site_op: need a qubit site");
    std::size_t stride = 1;
    for (std::size_t i = s.factor_dims.size(); i-- > site + 1;) stride *= s.factor_dims[i];
    const std::size_t dim = s.dim();
    for (std::size_t base = 0; base < dim; ++base) {
        if ((base / stride) % 2 != 0) continue;  // visit each amplitude pair once
        const std::size_t i0 = base, i1 = base + stride;
        const cx a0 = s.amps[i0], a1 = s.amps[i1];
        s.amps[i0] = op(0, 0) * a0 + op(0, 1) * a1;
        s.amps[i1] = op(1, 0) * a0 + op(1, 1) * a1;
    }
}

struct ProductExpectation {
    double expectation;
    bool is_eigen;
    double eigenvalue;  // meaningful only when is_eigen
};

// expectation of a product of single-site operators, with an eigenstate check
inline ProductExpectation product_op_expectation(const StateVector& psi, const std::vector<Axis>& axes,
                                                 double tol = kDefaultTol) {
    require(axes.size() == psi.factor_dims.size(), "product_op_expectation: one axis per site");
    const StateVector s = normalized(psi);
    StateVector acted = s;
    for (std::size_t i = 0; i < axes.size(); ++i) apply_site_op(acted, i, axis_matrix(axes[i]));
    const cx e = inner(s.amps, acted.amps);
    require(std::abs(e.imag()) <= 1e-9, "product_op_expectation: expectation not real");

    double dev = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) dev = std::max(dev, std::abs(acted.amps[i] - e * s.amps[i]));
    const bool eig = dev <= tol;
    return ProductExpectation{e.real(), eig, eig ? e.real() : 0.0};
}

// exhaustive check of the six-value local assignment table against the three
// certainty constraints of the eta = -1 state
struct LocalRealistParity {
    int assignments;      // 2^6
    int satisfying;       // tables meeting the three (x,y,y)-type constraints
    int forced_product;   // common AxBxCx of every satisfying table
    double quantum_xxx;   // quantum expectation of the (x,x,x) product
    bool contradiction;
};

inline LocalRealistParity local_realist_parity() {
    int satisfying = 0;
    int forced = 0;
    bool same = true;
    for (int mask = 0; mask < 64; ++mask) {
        auto v = [&](int k) { return (mask >> k) & 1 ? +1 : -1; };
        const int ax = v(0), ay = v(1), bx = v(2), by = v(3), cx_ = v(4), cy = v(5);
        if (ax * by * cy != 1 || ay * bx * cy != 1 || ay * by * cx_ != 1) continue;
        const int prod = ax * bx * cx_;
        if (satisfying == 0) forced = prod;
        else if (prod != forced) same = false;
        ++satisfying;
    }
    const double qx = product_op_expectation(ghz3(cx{-1.0}), {axis_x(), axis_x(), axis_x()}).expectation;
    const bool contradiction = same && satisfying > 0 && std::abs(static_cast<double>(forced) - qx) > 1.0;
    return LocalRealistParity{64, satisfying, forced, qx, contradiction};
}

// --- N-particle all-or-nothing states --------------------------------------

struct AllOrNothingState {
    std::size_t n;
    cx alpha, beta;  // amplitudes of |++..+> and |--..->
};

inline StateVector aon_state(const AllOrNothingState& a, double tol = kDefaultTol) {
    require(a.n >= 2, "all-or-nothing: need at least two sites");
    require(a.n <= 12, "all-or-nothing: site count exceeds state cap");
    require(std::abs(std::norm(a.alpha) + std::norm(a.beta) - 1.0) <= tol,
            "all-or-nothing: amplitudes not normalized");
    const std::size_t dim = std::size_t{1} << a.n;
    std::vector<cx> amps(dim);
    amps[0] = a.alpha;
    amps[dim - 1] = a.beta;
    return make_state(std::move(amps), std::vector<std::size_t>(a.n, 2));
}

// the maximal-correlation form: alpha = 1/sqrt(2), beta = e^{i phi}/sqrt(2)
inline AllOrNothingState aon_max_corr(std::size_t n, double phi) {
    const double r = 1.0 / std::sqrt(2.0);
    return AllOrNothingState{n, cx{r}, r * std::exp(cx{0.0, phi})};
}

// expectation of the product of transverse components at angles theta_i,
// by full enumeration of the 2^n outcome strings
inline double transverse_correlation(const StateVector& psi, const std::vector<double>& thetas) {
    require(thetas.size() == psi.factor_dims.size(), "transverse_correlation: one angle per site");
    StateVector s = normalized(psi);
    for (std::size_t i = 0; i < thetas.size(); ++i) apply_site_op(s, i, inplane_basis_rows(thetas[i]));
    double e = 0.0;
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        const int parity = (std::popcount(idx) & 1) ? -1 : +1;
        e += parity * std::norm(s.amps[idx]);
    }
    return e;
}

inline double transverse_correlation(const AllOrNothingState& a, const std::vector<double>& thetas) {
    return transverse_correlation(aon_state(a), thetas);
}

// closed form 2 Re(alpha conj(beta) e^{i sum theta}); cos(sum - phi) for the
// maximal-correlation amplitudes
inline double aon_closed_form(const AllOrNothingState& a, const std::vector<double>& thetas) {
    double sum = 0.0;
    for (double t : thetas) sum += t;
    return 2.0 * (a.alpha * std::conj(a.beta) * std::exp(cx{0.0, sum})).real();
}

// product of arbitrary per-site qubit kets
inline StateVector product_state(const std::vector<std::array<cx, 2>>& site_kets) {
    require(!site_kets.empty(), "product_state: no sites");
    StateVector s = make_state({site_kets[0][0], site_kets[0][1]}, {2});
    for (std::size_t i = 1; i < site_kets.size(); ++i)
        s = tensor(s, make_state({site_kets[i][0], site_kets[i][1]}, {2}));
    return normalized(s);
}

// coherence between |+..+> and |-..-> restricted to the first k sites
inline double subsystem_coherence(const StateVector& psi, std::size_t k) {
    const std::size_t n = psi.factor_dims.size();
    require(k >= 1 && k <= n, "subsystem_coherence: bad subsystem size");
    std::vector<std::size_t> keep(k);
    for (std::size_t i = 0; i < k; ++i) keep[i] = i;
    const std::size_t kept_dim = std::size_t{1} << k;
    return std::abs(reduced_element(psi, keep, 0, kept_dim - 1));
}

// n-site local model with angle-independent unit-magnitude outputs per lambda
struct NSiteLambda {
    double weight;
    std::vector<int> outputs;  // +-1 per site
};

struct NSiteLocalModel {
    std::vector<NSiteLambda> lambdas;
};

inline void validate(const NSiteLocalModel& m, std::size_t n) {
    require(!m.lambdas.empty(), "n-site model: no hidden variables");
    double tot = 0.0;
    for (const auto& l : m.lambdas) {
        require(l.weight >= 0.0, "n-site model: negative weight");
        require(l.outputs.size() == n, "n-site model: wrong site count");
        for (int v : l.outputs) require(v == +1 || v == -1, "n-site model: output must be +-1");
        tot += l.weight;
    }
    require(tot > 0.0, "n-site model: weights sum to zero");
}

inline double nsite_product_expectation(const NSiteLocalModel& m, const std::vector<double>& thetas) {
    validate(m, thetas.size());
    double num = 0.0, den = 0.0;
    for (const auto& l : m.lambdas) {
        int prod = 1;
        for (int v : l.outputs) prod *= v;
        num += l.weight * static_cast<double>(prod);
        den += l.weight;
    }
    return num / den;
}

inline NSiteLocalModel random_nsite_model(Rng& rng, std::size_t n, std::size_t max_lambdas = 8) {
    NSiteLocalModel m;
    const std::size_t k = 1 + rng.integer(max_lambdas);
    for (std::size_t i = 0; i < k; ++i) {
        NSiteLambda l{rng.uniform() + 1e-6, {}};
        for (std::size_t s = 0; s < n; ++s) l.outputs.push_back(rng.coin());
        m.lambdas.push_back(std::move(l));
    }
    return m;
}

}  // namespace qspin
