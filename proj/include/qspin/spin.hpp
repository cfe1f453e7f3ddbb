#pragma once

#include <cmath>

#include "matrix.hpp"

namespace qspin {

inline Mat sigma_x() {
    Mat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Mat sigma_y() {
    Mat m(2, 2);
    m(0, 1) = cx{0.0, -1.0};
    m(1, 0) = cx{0.0, 1.0};
    return m;
}

inline Mat sigma_z() {
    Mat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// analyzer at angle a in the measurement plane containing the z axis:
// cos(a) sigma_z + sin(a) sigma_x, eigenkets with real coefficients
inline Mat direction_operator(double a) {
    Mat m(2, 2);
    m(0, 0) = std::cos(a);
    m(1, 1) = -std::cos(a);
    m(0, 1) = std::sin(a);
    m(1, 0) = std::sin(a);
    return m;
}

// |+/a> = cos(a/2)|+> + sin(a/2)|->
inline std::vector<cx> plus_eigket(double a) {
    return {cx{std::cos(a / 2.0)}, cx{std::sin(a / 2.0)}};
}

// |-/a> = |+/(a+pi)> = -sin(a/2)|+> + cos(a/2)|->
inline std::vector<cx> minus_eigket(double a) {
    return {cx{-std::sin(a / 2.0)}, cx{std::cos(a / 2.0)}};
}

inline Mat direction_projector(double a, int sign) {
    require(sign == +1 || sign == -1, "direction_projector: sign must be +-1");
    const std::vector<cx> k = (sign == +1) ? plus_eigket(a) : minus_eigket(a);
    return outer(k, k);
}

// transverse analyzer in the Oxy plane: cos(t) sigma_x + sin(t) sigma_y,
// matrix [[0, e^{-it}], [e^{it}, 0]]
inline Mat inplane_operator(double t) {
    Mat m(2, 2);
    m(0, 1) = std::exp(cx{0.0, -t});
    m(1, 0) = std::exp(cx{0.0, t});
    return m;
}

// eigenkets (|+> +- e^{it}|->)/sqrt(2); rows of the returned matrix are the
// bras <+t| and <-t|, so applying it maps amplitudes into the outcome basis
inline Mat inplane_basis_rows(double t) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat m(2, 2);
    m(0, 0) = r;
    m(0, 1) = r * std::exp(cx{0.0, -t});
    m(1, 0) = r;
    m(1, 1) = -r * std::exp(cx{0.0, -t});
    return m;
}

// spin-1 operators in the ladder basis ordered |-1>, |0>, |+1>
struct Spin1 {
    Mat sx, sy, sz;
};

inline Spin1 spin1_matrices() {
    const double r = 1.0 / std::sqrt(2.0);
    Spin1 s{Mat(3, 3), Mat(3, 3), Mat(3, 3)};
    // Sz diag(-1, 0, +1); ladder S+- fill Sx = (S+ + S-)/2, Sy = (S+ - S-)/2i
    s.sz(0, 0) = -1.0;
    s.sz(2, 2) = 1.0;
    s.sx(0, 1) = r;
    s.sx(1, 0) = r;
    s.sx(1, 2) = r;
    s.sx(2, 1) = r;
    s.sy(0, 1) = cx{0.0, r};
    s.sy(1, 0) = cx{0.0, -r};
    s.sy(1, 2) = cx{0.0, r};
    s.sy(2, 1) = cx{0.0, -r};
    return s;
}

}  // namespace qspin
