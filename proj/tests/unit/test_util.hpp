#pragma once

#include <algorithm>
#include <cmath>

namespace amm_lab::test {

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline bool rel_close(double a, double b, double tol) { return rel_diff(a, b) <= tol; }

}  // namespace amm_lab::test
