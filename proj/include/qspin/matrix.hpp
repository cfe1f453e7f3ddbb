#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "core.hpp"

namespace qspin {

// dense complex matrix, row major
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<cx> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool square() const { return rows == cols; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }
};

inline Mat operator+(const Mat& x, const Mat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "matrix add: shape mismatch");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "matrix sub: shape mismatch");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline Mat operator*(cx s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
    require(x.cols == y.rows, "matrix mul: shape mismatch");
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const cx xv = x(i, k);
            if (xv == cx{}) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += xv * y(k, j);
        }
    return r;
}

inline Mat dagger(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = std::conj(x(i, j));
    return r;
}

inline cx trace(const Mat& x) {
    require(x.square(), "trace: matrix not square");
    cx t = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) t += x(i, i);
    return t;
}

inline double max_abs(const Mat& x) {
    double m = 0.0;
    for (const auto& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

inline double fro_norm(const Mat& x) {
    double s = 0.0;
    for (const auto& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

// Kronecker product, first factor slowest varying
inline Mat kron(const Mat& x, const Mat& y) {
    Mat r(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            const cx xv = x(i, j);
            if (xv == cx{}) continue;
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l)
                    r(i * y.rows + k, j * y.cols + l) = xv * y(k, l);
        }
    return r;
}

inline std::vector<cx> act(const Mat& x, const std::vector<cx>& v) {
    require(x.cols == v.size(), "act: shape mismatch");
    std::vector<cx> r(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        cx s = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) s += x(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

// <x|y>, conjugate-linear in the first argument
inline cx inner(const std::vector<cx>& x, const std::vector<cx>& y) {
    require(x.size() == y.size(), "inner: length mismatch");
    cx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm2(const std::vector<cx>& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return s;
}

// |x><y|
inline Mat outer(const std::vector<cx>& x, const std::vector<cx>& y) {
    Mat r(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r(i, j) = x[i] * std::conj(y[j]);
    return r;
}

inline double max_diff(const Mat& x, const Mat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "max_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

inline double hermitian_residual(const Mat& x) {
    require(x.square(), "hermitian_residual: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            m = std::max(m, std::abs(x(i, j) - std::conj(x(j, i))));
    return m;
}

inline double unitary_residual(const Mat& x) {
    require(x.square(), "unitary_residual: matrix not square");
    return max_diff(dagger(x) * x, Mat::identity(x.rows));
}

// max of hermiticity and idempotency defects
inline double projector_residual(const Mat& x) {
    require(x.square(), "projector_residual: matrix not square");
    return std::max(hermitian_residual(x), max_diff(x * x, x));
}

}  // namespace qspin
