#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qspin {

using cx = std::complex<double>;

// default tolerance for validation predicates; callers may override per call
inline constexpr double kDefaultTol = 1e-10;

// hard caps: state vectors up to 2^12 amplitudes, dense operator routines up
// to 2^6 rows (anything bigger errors out instead of thrashing)
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 12;
inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << 6;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

inline double sqr(double x) { return x * x; }

}  // namespace qspin
