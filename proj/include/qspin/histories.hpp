#pragma once

#include <cmath>
#include <vector>

#include "eigen.hpp"
#include "state.hpp"

namespace qspin {

// ordered measurement times with one evolution operator per interval;
// step_unitaries[i] propagates from the previous time point (or from t0 for
// the first entry) to times[i]
struct TimeGrid {
    std::vector<double> times;
    std::vector<Mat> step_unitaries;
};

inline TimeGrid identity_grid(std::size_t n_times, std::size_t dim) {
    TimeGrid g;
    for (std::size_t i = 0; i < n_times; ++i) {
        g.times.push_back(static_cast<double>(i + 1));
        g.step_unitaries.push_back(Mat::identity(dim));
    }
    return g;
}

inline void validate(const TimeGrid& g, double tol = 1e-12) {
    require(!g.times.empty(), "time grid: empty");
    require(g.times.size() == g.step_unitaries.size(), "time grid: one unitary per interval");
    for (std::size_t i = 1; i < g.times.size(); ++i)
        require(g.times[i] > g.times[i - 1], "time grid: times must increase strictly");
    const std::size_t dim = g.step_unitaries.front().rows;
    for (const Mat& u : g.step_unitaries) {
        require(u.rows == dim && u.cols == dim, "time grid: unitary shape mismatch");
        require(unitary_residual(u) <= tol, "time grid: operator not unitary");
    }
}

// projectors carried back to t0: P_i -> U(t_i,t0)^dag P_i U(t_i,t0)
inline std::vector<Mat> heisenberg_projectors(const TimeGrid& g, const std::vector<Mat>& projs) {
    validate(g);
    require(projs.size() == g.times.size(), "heisenberg_projectors: one projector per time");
    std::vector<Mat> out;
    Mat u0i = Mat::identity(g.step_unitaries.front().rows);
    for (std::size_t i = 0; i < projs.size(); ++i) {
        u0i = g.step_unitaries[i] * u0i;
        out.push_back(dagger(u0i) * projs[i] * u0i);
    }
    return out;
}

// probability of one projector sequence: Tr{P_k .. P_1 rho P_1 .. P_k} with
// Heisenberg projectors
inline double sequence_prob(const DensityOp& rho0, const TimeGrid& grid, const std::vector<Mat>& choice,
                            double tol = kDefaultTol) {
    for (const Mat& p : choice) {
        require(p.rows == rho0.dim(), "sequence_prob: projector dimension mismatch");
        require(projector_residual(p) <= tol, "sequence_prob: not a projector");
    }
    const std::vector<Mat> hp = heisenberg_projectors(grid, choice);
    Mat chain = Mat::identity(rho0.dim());
    for (const Mat& p : hp) chain = p * chain;
    return trace(chain * rho0.mat * dagger(chain)).real();
}

// family of histories: at each time a complete orthogonal projector set
struct HistoryFamily {
    DensityOp rho0;
    TimeGrid grid;
    std::vector<std::vector<Mat>> projector_sets;
};

inline HistoryFamily make_family(DensityOp rho0, TimeGrid grid, std::vector<std::vector<Mat>> sets,
                                 double tol = 1e-12) {
    validate(grid, tol);
    require(sets.size() == grid.times.size(), "family: one projector set per time");
    for (const auto& s : sets) {
        validate_projector_family(s, tol);
        require(s.front().rows == rho0.dim(), "family: projector dimension mismatch");
    }
    require(grid.step_unitaries.front().rows == rho0.dim(), "family: unitary dimension mismatch");
    return HistoryFamily{std::move(rho0), std::move(grid), std::move(sets)};
}

inline std::size_t history_count(const HistoryFamily& f) {
    std::size_t n = 1;
    for (const auto& s : f.projector_sets) n *= s.size();
    return n;
}

struct History {
    std::vector<std::size_t> branch;  // projector index chosen at each time
    double prob;
    bool zero;  // flagged when the probability vanishes
};

namespace detail {

inline std::vector<std::vector<Mat>> heisenberg_sets(const HistoryFamily& f) {
    std::vector<std::vector<Mat>> hs(f.projector_sets.size());
    Mat u0i = Mat::identity(f.rho0.dim());
    for (std::size_t i = 0; i < f.projector_sets.size(); ++i) {
        u0i = f.grid.step_unitaries[i] * u0i;
        const Mat ud = dagger(u0i);
        for (const Mat& p : f.projector_sets[i]) hs[i].push_back(ud * p * u0i);
    }
    return hs;
}

// chain operators P_k(j_k) .. P_1(j_1) for every branch, depth first
inline void collect_chains(const std::vector<std::vector<Mat>>& hs, std::size_t level, const Mat& prefix,
                           std::vector<std::size_t>& branch, std::vector<std::vector<std::size_t>>& branches,
                           std::vector<Mat>& chains) {
    if (level == hs.size()) {
        branches.push_back(branch);
        chains.push_back(prefix);
        return;
    }
    for (std::size_t j = 0; j < hs[level].size(); ++j) {
        branch.push_back(j);
        collect_chains(hs, level + 1, hs[level][j] * prefix, branch, branches, chains);
        branch.pop_back();
    }
}

}  // namespace detail

inline std::vector<History> family_probabilities(const HistoryFamily& f) {
    require(history_count(f) <= 1000000, "family_probabilities: too many histories");
    const std::vector<std::vector<Mat>> hs = detail::heisenberg_sets(f);
    std::vector<std::vector<std::size_t>> branches;
    std::vector<Mat> chains;
    std::vector<std::size_t> branch;
    detail::collect_chains(hs, 0, Mat::identity(f.rho0.dim()), branch, branches, chains);
    std::vector<History> out;
    out.reserve(chains.size());
    for (std::size_t h = 0; h < chains.size(); ++h) {
        const double p = trace(chains[h] * f.rho0.mat * dagger(chains[h])).real();
        out.push_back(History{branches[h], p, std::abs(p) < 1e-14});
    }
    return out;
}

enum class ConsistencyMode { strong, weak };

struct ConsistencyPair {
    std::size_t first, second;  // history indices in family_probabilities order
    cx value;                   // Tr{C_i rho C_j^dag}
};

struct ConsistencyReport {
    double max_violation;  // largest |value| (strong) or |Re value| (weak) off the diagonal
    std::vector<ConsistencyPair> pairs;
};

inline ConsistencyReport consistency_matrix(const HistoryFamily& f,
                                            ConsistencyMode mode = ConsistencyMode::strong) {
    const std::size_t n = history_count(f);
    require(n * n <= 1000000, "consistency_matrix: too many history pairs");
    const std::vector<std::vector<Mat>> hs = detail::heisenberg_sets(f);
    std::vector<std::vector<std::size_t>> branches;
    std::vector<Mat> chains;
    std::vector<std::size_t> branch;
    detail::collect_chains(hs, 0, Mat::identity(f.rho0.dim()), branch, branches, chains);

    ConsistencyReport rep{0.0, {}};
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const Mat ri = chains[i] * f.rho0.mat;
        for (std::size_t j = 0; j < chains.size(); ++j) {
            if (i == j) continue;
            const cx t = trace(ri * dagger(chains[j]));
            rep.pairs.push_back(ConsistencyPair{i, j, t});
            const double v = (mode == ConsistencyMode::strong) ? std::abs(t) : std::abs(t.real());
            rep.max_violation = std::max(rep.max_violation, v);
        }
    }
    return rep;
}

// family built from the eigenbasis of rho0, carried forward through the grid;
// consistent by construction
inline HistoryFamily build_consistent_family(const DensityOp& rho0, const TimeGrid& grid) {
    validate(grid);
    const EigResult e = eig_hermitian(rho0.mat);
    const std::size_t d = rho0.dim();
    std::vector<Mat> eig_projs;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<cx> v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = e.vectors(i, k);
        eig_projs.push_back(outer(v, v));
    }
    std::vector<std::vector<Mat>> sets;
    Mat u0i = Mat::identity(d);
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
        u0i = grid.step_unitaries[i] * u0i;
        const Mat ud = dagger(u0i);
        std::vector<Mat> set;
        for (const Mat& p : eig_projs) set.push_back(u0i * p * ud);
        sets.push_back(std::move(set));
    }
    return make_family(rho0, grid, std::move(sets));
}

// merge projector subsets at each time; groups[t] must partition the parent
// set indices
inline HistoryFamily coarse_grain(const HistoryFamily& f,
                                  const std::vector<std::vector<std::vector<std::size_t>>>& groups) {
    require(groups.size() == f.projector_sets.size(), "coarse_grain: one grouping per time");
    std::vector<std::vector<Mat>> sets;
    for (std::size_t t = 0; t < groups.size(); ++t) {
        const auto& parent = f.projector_sets[t];
        std::vector<bool> used(parent.size(), false);
        std::vector<Mat> merged;
        for (const auto& group : groups[t]) {
            require(!group.empty(), "coarse_grain: empty group");
            Mat sum(parent.front().rows, parent.front().cols);
            for (std::size_t idx : group) {
                require(idx < parent.size(), "coarse_grain: index out of range");
                require(!used[idx], "coarse_grain: index grouped twice");
                used[idx] = true;
                sum = sum + parent[idx];
            }
            merged.push_back(std::move(sum));
        }
        for (bool u : used) require(u, "coarse_grain: grouping must cover every projector");
        sets.push_back(std::move(merged));
    }
    return make_family(f.rho0, f.grid, std::move(sets));
}

struct AdditivityReport {
    double max_abs_delta;
    std::vector<double> deltas;  // grouped-history prob minus sum of parents, daughter order
};

inline AdditivityReport coarse_grain_additivity(const HistoryFamily& parent,
                                                const std::vector<std::vector<std::vector<std::size_t>>>& groups) {
    const HistoryFamily daughter = coarse_grain(parent, groups);
    const std::vector<History> dp = family_probabilities(daughter);
    const std::vector<History> pp = family_probabilities(parent);

    // parent index -> daughter group index, per time
    std::vector<std::vector<std::size_t>> to_group(groups.size());
    for (std::size_t t = 0; t < groups.size(); ++t) {
        to_group[t].resize(parent.projector_sets[t].size());
        for (std::size_t g = 0; g < groups[t].size(); ++g)
            for (std::size_t idx : groups[t][g]) to_group[t][idx] = g;
    }

    // daughter histories are enumerated in mixed-radix order over group counts
    std::vector<std::size_t> radix(groups.size());
    for (std::size_t t = 0; t < groups.size(); ++t) radix[t] = groups[t].size();
    auto flat = [&](const std::vector<std::size_t>& branch) {
        std::size_t idx = 0;
        for (std::size_t t = 0; t < branch.size(); ++t) idx = idx * radix[t] + branch[t];
        return idx;
    };

    std::vector<double> sums(dp.size(), 0.0);
    for (const History& h : pp) {
        std::vector<std::size_t> mapped(h.branch.size());
        for (std::size_t t = 0; t < h.branch.size(); ++t) mapped[t] = to_group[t][h.branch[t]];
        sums[flat(mapped)] += h.prob;
    }

    AdditivityReport rep{0.0, std::vector<double>(dp.size(), 0.0)};
    for (std::size_t i = 0; i < dp.size(); ++i) {
        rep.deltas[i] = dp[i].prob - sums[i];
        rep.max_abs_delta = std::max(rep.max_abs_delta, std::abs(rep.deltas[i]));
    }
    return rep;
}

// splitting a projector into orthogonal pieces: probability computed from the
// summed projector versus the sum of piecewise probabilities; the difference
// is the crossed interference term
struct InterferenceSplit {
    double amplitude_sum;    // Tr{F (sum P_i) rho (sum P_j) F}
    double probability_sum;  // sum_i Tr{F P_i rho P_i F}
    cx crossed;              // sum over i != j
};

inline InterferenceSplit interference_split(const DensityOp& rho0, const std::vector<Mat>& pieces,
                                            const Mat& final_proj, double tol = kDefaultTol) {
    require(!pieces.empty(), "interference_split: no pieces");
    require(projector_residual(final_proj) <= tol, "interference_split: final operator not a projector");
    Mat total(pieces.front().rows, pieces.front().cols);
    for (const Mat& p : pieces) {
        require(projector_residual(p) <= tol, "interference_split: piece not a projector");
        total = total + p;
    }
    require(projector_residual(total) <= tol, "interference_split: pieces do not sum to a projector");

    const double amp = trace(final_proj * total * rho0.mat * total * final_proj).real();
    double psum = 0.0;
    cx crossed = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            const cx t = trace(final_proj * pieces[i] * rho0.mat * pieces[j] * final_proj);
            if (i == j) psum += t.real();
            else crossed += t;
        }
    return InterferenceSplit{amp, psum, crossed};
}

}  // namespace qspin
