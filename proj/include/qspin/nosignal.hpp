#pragma once

#include <cmath>
#include <vector>

#include "eigen.hpp"
#include "state.hpp"

namespace qspin {

// one measurement outcome: a (possibly degenerate) eigenvalue cluster and its
// spectral projector
struct OutcomeGroup {
    double eigenvalue;  // cluster mean
    Mat projector;
};

// eigenvalues within cluster_tol of their neighbor share one outcome
inline std::vector<OutcomeGroup> outcome_groups(const Mat& obs, double cluster_tol = 1e-9) {
    const EigResult e = eig_hermitian(obs);
    const std::size_t d = obs.rows;
    std::vector<OutcomeGroup> groups;
    std::size_t start = 0;
    while (start < d) {
        std::size_t stop = start + 1;
        while (stop < d && e.values[stop] - e.values[stop - 1] <= cluster_tol) ++stop;
        Mat proj(d, d);
        double mean = 0.0;
        for (std::size_t k = start; k < stop; ++k) {
            mean += e.values[k];
            std::vector<cx> v(d);
            for (std::size_t i = 0; i < d; ++i) v[i] = e.vectors(i, k);
            proj = proj + outer(v, v);
        }
        groups.push_back(OutcomeGroup{mean / static_cast<double>(stop - start), std::move(proj)});
        start = stop;
    }
    return groups;
}

namespace detail {

inline void require_bipartite(const DensityOp& rho) {
    require(rho.factor_dims.size() == 2, "expected a bipartite density operator");
}

}  // namespace detail

// outcome distribution for measuring o_b alone, through the reduced state
inline std::vector<double> reduced_probabilities(const DensityOp& rho, const Mat& o_b) {
    detail::require_bipartite(rho);
    const DensityOp rho_b = partial_trace(rho, {1});
    require(o_b.rows == rho_b.dim(), "reduced_probabilities: observable dimension mismatch");
    std::vector<double> probs;
    for (const OutcomeGroup& g : outcome_groups(o_b)) probs.push_back(trace(g.projector * rho_b.mat).real());
    return probs;
}

// distribution of the o_b outcome after an o_a measurement, summed over the
// unread o_a results; joint weights from the two-projector sandwich
inline std::vector<double> joint_marginal_b(const DensityOp& rho, const Mat& o_a, const Mat& o_b) {
    detail::require_bipartite(rho);
    const std::size_t da = rho.factor_dims[0], db = rho.factor_dims[1];
    require(o_a.rows == da && o_b.rows == db, "joint_marginal_b: observable dimension mismatch");
    const std::vector<OutcomeGroup> ga = outcome_groups(o_a);
    const std::vector<OutcomeGroup> gb = outcome_groups(o_b);
    const Mat ia = Mat::identity(da), ib = Mat::identity(db);
    std::vector<double> marginal(gb.size(), 0.0);
    for (std::size_t n = 0; n < gb.size(); ++n) {
        const Mat pb = kron(ia, gb[n].projector);
        for (const OutcomeGroup& a : ga) {
            const Mat pa = kron(a.projector, ib);
            marginal[n] += trace(pb * pa * rho.mat * pa * pb).real();
        }
    }
    return marginal;
}

struct NoSignalingReport {
    double max_choice_discrepancy;  // marginal shift across o_a choices
    double max_path_discrepancy;    // joint-then-sum versus reduced-state path
    std::vector<double> marginal;   // the reduced-state distribution
};

inline NoSignalingReport no_signaling_check(const DensityOp& rho, const std::vector<Mat>& o_a_choices,
                                            const Mat& o_b) {
    require(!o_a_choices.empty(), "no_signaling_check: no observable choices");
    const std::vector<double> reduced = reduced_probabilities(rho, o_b);
    NoSignalingReport rep{0.0, 0.0, reduced};
    std::vector<double> first;
    for (const Mat& o_a : o_a_choices) {
        const std::vector<double> m = joint_marginal_b(rho, o_a, o_b);
        require(m.size() == reduced.size(), "no_signaling_check: outcome count mismatch");
        for (std::size_t i = 0; i < m.size(); ++i)
            rep.max_path_discrepancy = std::max(rep.max_path_discrepancy, std::abs(m[i] - reduced[i]));
        if (first.empty()) first = m;
        else
            for (std::size_t i = 0; i < m.size(); ++i)
                rep.max_choice_discrepancy = std::max(rep.max_choice_discrepancy, std::abs(m[i] - first[i]));
    }
    return rep;
}

// reduced matrix of the second factor via explicit summation over an
// orthonormal basis of the first: <i|rho_B|j> = sum_k <k,i|rho|k,j>
inline Mat reduced_in_basis(const DensityOp& rho, const std::vector<std::vector<cx>>& basis_a,
                            double tol = kDefaultTol) {
    detail::require_bipartite(rho);
    const std::size_t da = rho.factor_dims[0], db = rho.factor_dims[1];
    require(basis_a.size() == da, "reduced_in_basis: basis size mismatch");
    for (std::size_t i = 0; i < da; ++i) {
        require(basis_a[i].size() == da, "reduced_in_basis: basis vector length mismatch");
        for (std::size_t j = 0; j < da; ++j) {
            const cx g = inner(basis_a[i], basis_a[j]);
            const cx want = (i == j) ? cx{1.0} : cx{0.0};
            require(std::abs(g - want) <= tol, "reduced_in_basis: basis not orthonormal");
        }
    }
    Mat out(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            cx s = 0.0;
            for (const auto& phi : basis_a)
                for (std::size_t a = 0; a < da; ++a)
                    for (std::size_t ap = 0; ap < da; ++ap)
                        s += std::conj(phi[a]) * phi[ap] * rho.mat(a * db + i, ap * db + j);
            out(i, j) = s;
        }
    return out;
}

struct BasisIndependenceReport {
    double max_difference;  // across bases and against partial_trace
    Mat rho_b;
};

inline BasisIndependenceReport basis_independence(const DensityOp& rho,
                                                  const std::vector<std::vector<std::vector<cx>>>& bases) {
    require(!bases.empty(), "basis_independence: no bases supplied");
    const Mat reference = partial_trace(rho, {1}).mat;
    double md = 0.0;
    for (const auto& b : bases) md = std::max(md, max_diff(reduced_in_basis(rho, b), reference));
    return BasisIndependenceReport{md, reference};
}

}  // namespace qspin
