#pragma once

#include <array>
#include <set>

#include "eigen.hpp"
#include "spin.hpp"
#include "state.hpp"

namespace qspin {

// squares of the spin-1 components: mutually commuting, each with spectrum
// {0, 1, 1}, summing to 2*identity
struct Spin1Squares {
    Mat sx2, sy2, sz2;
    double max_commutator;   // largest |[Si^2, Sj^2]| entry
    double sum_residual;     // |Sx^2 + Sy^2 + Sz^2 - 2 I| max entry
};

inline Spin1Squares spin1_squares() {
    const Spin1 s = spin1_matrices();
    Spin1Squares r{s.sx * s.sx, s.sy * s.sy, s.sz * s.sz, 0.0, 0.0};
    const Mat* sq[3] = {&r.sx2, &r.sy2, &r.sz2};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            r.max_commutator = std::max(r.max_commutator, max_diff(*sq[i] * *sq[j], *sq[j] * *sq[i]));
    r.sum_residual = max_diff(r.sx2 + r.sy2 + r.sz2, cx{2.0} * Mat::identity(3));
    return r;
}

// 3x3 grid of two-spin observables; each row and column multiplies to
// sign * identity with the signs recorded here
struct OperatorSquare {
    std::array<std::array<Mat, 3>, 3> op;
    std::array<int, 3> row_sign;
    std::array<int, 3> col_sign;
};

inline OperatorSquare mermin_square() {
    const Mat id = Mat::identity(2);
    const Mat sx = sigma_x(), sy = sigma_y(), sz = sigma_z();
    OperatorSquare q;
    q.op[0] = {kron(sx, id), kron(id, sx), kron(sx, sx)};
    q.op[1] = {kron(id, sy), kron(sy, id), kron(sy, sy)};
    q.op[2] = {kron(sx, sy), kron(sy, sx), kron(sz, sz)};
    q.row_sign = {+1, +1, +1};
    q.col_sign = {+1, +1, -1};
    return q;
}

struct SquareValidation {
    double max_product_residual;   // row/col products vs sign * identity
    double max_commutator;         // within every row and every column
    double max_square_residual;    // each entry squared vs identity
};

inline SquareValidation validate(const OperatorSquare& q) {
    SquareValidation v{0.0, 0.0, 0.0};
    const Mat id = Mat::identity(4);
    for (int r = 0; r < 3; ++r) {
        const Mat prod = q.op[r][0] * q.op[r][1] * q.op[r][2];
        v.max_product_residual =
            std::max(v.max_product_residual, max_diff(prod, cx{static_cast<double>(q.row_sign[r])} * id));
    }
    for (int c = 0; c < 3; ++c) {
        const Mat prod = q.op[0][c] * q.op[1][c] * q.op[2][c];
        v.max_product_residual =
            std::max(v.max_product_residual, max_diff(prod, cx{static_cast<double>(q.col_sign[c])} * id));
    }
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                v.max_commutator = std::max(
                    v.max_commutator, max_diff(q.op[i][a] * q.op[i][b], q.op[i][b] * q.op[i][a]));
                v.max_commutator = std::max(
                    v.max_commutator, max_diff(q.op[a][i] * q.op[b][i], q.op[b][i] * q.op[a][i]));
            }
    for (const auto& row : q.op)
        for (const Mat& m : row)
            v.max_square_residual = std::max(v.max_square_residual, max_diff(m * m, id));
    return v;
}

// exhaustive search over +-1 value assignments to the nine entries
struct ColoringReport {
    int assignments_examined;   // 2^9
    int satisfying;             // all six sign constraints
    int relaxed_all_plus;       // all rows and columns forced to +1 instead
};

inline ColoringReport coloring_search(const OperatorSquare& q) {
    ColoringReport rep{512, 0, 0};
    for (int mask = 0; mask < 512; ++mask) {
        auto v = [&](int r, int c) { return (mask >> (3 * r + c)) & 1 ? +1 : -1; };
        bool exact = true, relaxed = true;
        for (int r = 0; r < 3; ++r) {
            const int p = v(r, 0) * v(r, 1) * v(r, 2);
            if (p != q.row_sign[r]) exact = false;
            if (p != +1) relaxed = false;
        }
        for (int c = 0; c < 3; ++c) {
            const int p = v(0, c) * v(1, c) * v(2, c);
            if (p != q.col_sign[c]) exact = false;
            if (p != +1) relaxed = false;
        }
        if (exact) ++rep.satisfying;
        if (relaxed) ++rep.relaxed_all_plus;
    }
    return rep;
}

// number of deterministic response categories for two settings per side,
// counted by explicit enumeration and equal to (2^settings)^2
inline int wigner_category_count(int settings_per_side = 2) {
    require(settings_per_side >= 1 && settings_per_side <= 16, "wigner_category_count: bad setting count");
    std::set<std::pair<unsigned, unsigned>> categories;
    const unsigned tables = 1u << settings_per_side;
    for (unsigned a = 0; a < tables; ++a)
        for (unsigned b = 0; b < tables; ++b) categories.insert({a, b});
    return static_cast<int>(categories.size());
}

}  // namespace qspin
