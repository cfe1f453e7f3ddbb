#pragma once

#include <cstdint>
#include <vector>

#include "eigen.hpp"
#include "matrix.hpp"

namespace qspin {

inline std::size_t dims_product(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) {
        require(d >= 1, "factor dimension must be >= 1");
        p *= d;
    }
    return p;
}

// normalized or unnormalized ket over an ordered list of tensor factors;
// factor 0 is the slowest varying index
struct StateVector {
    std::vector<cx> amps;
    std::vector<std::size_t> factor_dims;

    std::size_t dim() const { return amps.size(); }
};

inline StateVector make_state(std::vector<cx> amps, std::vector<std::size_t> factor_dims) {
    require(!factor_dims.empty(), "state: no factors");
    require(dims_product(factor_dims) == amps.size(), "state: factor dims do not match amplitude count");
    require(amps.size() <= kMaxStateDim, "state: dimension exceeds cap");
    return StateVector{std::move(amps), std::move(factor_dims)};
}

inline StateVector basis_state(std::vector<std::size_t> factor_dims, std::size_t index) {
    const std::size_t d = dims_product(factor_dims);
    require(index < d, "basis_state: index out of range");
    std::vector<cx> amps(d);
    amps[index] = 1.0;
    return make_state(std::move(amps), std::move(factor_dims));
}

inline double state_norm2(const StateVector& s) { return norm2(s.amps); }

inline StateVector normalized(const StateVector& s) {
    const double n2 = state_norm2(s);
    require(n2 > 0.0, "normalized: zero state");
    StateVector r = s;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : r.amps) v *= inv;
    return r;
}

inline StateVector tensor(const StateVector& x, const StateVector& y) {
    require(x.dim() * y.dim() <= kMaxStateDim, "tensor: dimension exceeds cap");
    std::vector<cx> amps(x.dim() * y.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) amps[i * y.dim() + j] = x.amps[i] * y.amps[j];
    std::vector<std::size_t> dims = x.factor_dims;
    dims.insert(dims.end(), y.factor_dims.begin(), y.factor_dims.end());
    return StateVector{std::move(amps), std::move(dims)};
}

enum class OpKind { general, hermitian, unitary, projector };

struct LinOp {
    Mat mat;
    OpKind kind = OpKind::general;

    std::size_t dim() const { return mat.rows; }
};

inline LinOp make_operator(Mat m, OpKind kind = OpKind::general, double tol = kDefaultTol) {
    require(m.square(), "operator: matrix not square");
    require(m.rows >= 1 && m.rows <= kMaxStateDim, "operator: bad dimension");
    switch (kind) {
        case OpKind::general:
            break;
        case OpKind::hermitian:
            require(hermitian_residual(m) <= tol, "operator: not Hermitian");
            break;
        case OpKind::unitary:
            require(unitary_residual(m) <= tol, "operator: not unitary");
            break;
        case OpKind::projector:
            require(projector_residual(m) <= tol, "operator: not a projector");
            break;
    }
    return LinOp{std::move(m), kind};
}

inline LinOp tensor(const LinOp& x, const LinOp& y) {
    const OpKind kind = (x.kind == y.kind) ? x.kind : OpKind::general;
    return LinOp{kron(x.mat, y.mat), kind};
}

// density operator over an ordered factor list; trace one, Hermitian, and
// positive semidefinite (eigenvalues checked whenever the dimension allows)
struct DensityOp {
    Mat mat;
    std::vector<std::size_t> factor_dims;

    std::size_t dim() const { return mat.rows; }
};

inline double min_eigenvalue(const Mat& h) { return eig_hermitian(h).values.front(); }

inline DensityOp make_density(Mat m, std::vector<std::size_t> factor_dims, double tol = kDefaultTol) {
    require(m.square(), "density: matrix not square");
    require(m.rows <= kMaxDenseDim, "density: dimension exceeds dense cap");
    require(dims_product(factor_dims) == m.rows, "density: factor dims do not match matrix");
    require(hermitian_residual(m) <= tol, "density: not Hermitian");
    require(std::abs(trace(m) - cx{1.0}) <= tol, "density: trace not one");
    require(min_eigenvalue(m) >= -tol, "density: negative eigenvalue");
    return DensityOp{std::move(m), std::move(factor_dims)};
}

inline DensityOp density_from_state(const StateVector& s) {
    require(s.dim() <= kMaxDenseDim, "density_from_state: dimension exceeds dense cap");
    const StateVector n = normalized(s);
    return DensityOp{outer(n.amps, n.amps), n.factor_dims};
}

namespace detail {

// flat index tables for a kept/traced factor split: global = kept[i] + traced[t]
struct SplitIndex {
    std::vector<std::size_t> kept_dims, traced_dims;
    std::vector<std::size_t> kept_offset, traced_offset;
};

inline SplitIndex split_factors(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
    require(!keep.empty(), "partial_trace: keep list empty");
    std::vector<bool> is_kept(dims.size(), false);
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t k : keep) {
        require(k < dims.size(), "partial_trace: keep index out of range");
        require(first || k > prev, "partial_trace: keep list must be strictly increasing");
        is_kept[k] = true;
        prev = k;
        first = false;
    }

    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

    SplitIndex sp;
    std::vector<std::size_t> kept_stride, traced_stride;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (is_kept[i]) {
            sp.kept_dims.push_back(dims[i]);
            kept_stride.push_back(stride[i]);
        } else {
            sp.traced_dims.push_back(dims[i]);
            traced_stride.push_back(stride[i]);
        }
    }

    auto offsets = [](const std::vector<std::size_t>& d, const std::vector<std::size_t>& st) {
        std::vector<std::size_t> out(dims_product(d), 0);
        for (std::size_t flat = 0; flat < out.size(); ++flat) {
            std::size_t rem = flat, off = 0;
            for (std::size_t i = d.size(); i-- > 0;) {
                off += (rem % d[i]) * st[i];
                rem /= d[i];
            }
            out[flat] = off;
        }
        return out;
    };
    sp.kept_offset = offsets(sp.kept_dims, kept_stride);
    sp.traced_offset = offsets(sp.traced_dims, traced_stride);
    return sp;
}

}  // namespace detail

inline DensityOp partial_trace(const DensityOp& rho, const std::vector<std::size_t>& keep) {
    const detail::SplitIndex sp = detail::split_factors(rho.factor_dims, keep);
    const std::size_t dk = sp.kept_offset.size(), dt = sp.traced_offset.size();
    require(dk <= kMaxDenseDim, "partial_trace: kept dimension exceeds dense cap");
    Mat out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cx s = 0.0;
            for (std::size_t t = 0; t < dt; ++t)
                s += rho.mat(sp.kept_offset[i] + sp.traced_offset[t], sp.kept_offset[j] + sp.traced_offset[t]);
            out(i, j) = s;
        }
    return make_density(std::move(out), sp.kept_dims);
}

inline DensityOp partial_trace(const StateVector& psi, const std::vector<std::size_t>& keep) {
    const StateVector s = normalized(psi);
    const detail::SplitIndex sp = detail::split_factors(s.factor_dims, keep);
    const std::size_t dk = sp.kept_offset.size(), dt = sp.traced_offset.size();
    require(dk <= kMaxDenseDim, "partial_trace: kept dimension exceeds dense cap");
    Mat out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cx v = 0.0;
            for (std::size_t t = 0; t < dt; ++t)
                v += s.amps[sp.kept_offset[i] + sp.traced_offset[t]] *
                     std::conj(s.amps[sp.kept_offset[j] + sp.traced_offset[t]]);
            out(i, j) = v;
        }
    return make_density(std::move(out), sp.kept_dims);
}

// single matrix element <i|rho_kept|j> without materializing the reduced
// operator; exists so coherences stay reachable past the dense cap
inline cx reduced_element(const StateVector& psi, const std::vector<std::size_t>& keep,
                          std::size_t i, std::size_t j) {
    const StateVector s = normalized(psi);
    const detail::SplitIndex sp = detail::split_factors(s.factor_dims, keep);
    require(i < sp.kept_offset.size() && j < sp.kept_offset.size(), "reduced_element: index out of range");
    cx v = 0.0;
    for (std::size_t t = 0; t < sp.traced_offset.size(); ++t)
        v += s.amps[sp.kept_offset[i] + sp.traced_offset[t]] *
             std::conj(s.amps[sp.kept_offset[j] + sp.traced_offset[t]]);
    return v;
}

// complete orthogonal projector family: each element a projector, mutual
// products zero, sum the identity (all within tol)
inline void validate_projector_family(const std::vector<Mat>& projs, double tol = kDefaultTol) {
    require(!projs.empty(), "projector family: empty");
    const std::size_t n = projs.front().rows;
    Mat sum(n, n);
    for (const Mat& p : projs) {
        require(p.rows == n && p.cols == n, "projector family: shape mismatch");
        require(projector_residual(p) <= tol, "projector family: element not a projector");
        sum = sum + p;
    }
    require(max_diff(sum, Mat::identity(n)) <= tol, "projector family: does not sum to identity");
    for (std::size_t i = 0; i < projs.size(); ++i)
        for (std::size_t j = i + 1; j < projs.size(); ++j)
            require(max_abs(projs[i] * projs[j]) <= tol, "projector family: elements not orthogonal");
}

inline std::vector<double> measure_probs(const StateVector& psi, const std::vector<Mat>& projs,
                                         double tol = kDefaultTol) {
    validate_projector_family(projs, tol);
    const StateVector s = normalized(psi);
    std::vector<double> probs;
    probs.reserve(projs.size());
    for (const Mat& p : projs) {
        require(p.rows == s.dim(), "measure_probs: projector dimension mismatch");
        const double v = inner(s.amps, act(p, s.amps)).real();
        require(v >= -tol, "measure_probs: negative probability");
        probs.push_back(std::max(0.0, v));
    }
    return probs;
}

inline std::vector<double> measure_probs(const DensityOp& rho, const std::vector<Mat>& projs,
                                         double tol = kDefaultTol) {
    validate_projector_family(projs, tol);
    std::vector<double> probs;
    probs.reserve(projs.size());
    for (const Mat& p : projs) {
        require(p.rows == rho.dim(), "measure_probs: projector dimension mismatch");
        const double v = trace(p * rho.mat).real();
        require(v >= -tol, "measure_probs: negative probability");
        probs.push_back(std::max(0.0, v));
    }
    return probs;
}

}  // namespace qspin
