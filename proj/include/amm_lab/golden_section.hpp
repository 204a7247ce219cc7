#pragma once

#include <algorithm>
#include <cmath>

namespace amm_lab {

template <typename Real>
struct GoldenResult {
    Real x{};
    Real fx{};
    int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Stops once the bracket width drops below `rel_tol` times the larger
/// bracket end, or after `max_iter` contractions.
template <typename Real, typename F>
GoldenResult<Real> golden_section_maximize(F&& f, Real lo, Real hi, Real rel_tol,
                                           int max_iter = 600) {
    // 1/phi; long double carries more digits than the search ever needs.
    const Real inv_phi = static_cast<Real>(0.618033988749894848204586834365638118L);
    Real x1 = hi - inv_phi * (hi - lo);
    Real x2 = lo + inv_phi * (hi - lo);
    Real f1 = f(x1);
    Real f2 = f(x2);
    int it = 0;
    for (; it < max_iter; ++it) {
        const Real abs_lo = lo < Real(0) ? -lo : lo;
        const Real abs_hi = hi < Real(0) ? -hi : hi;
        const Real scale = abs_lo > abs_hi ? abs_lo : abs_hi;
        if (hi - lo <= rel_tol * scale) {
            break;
        }
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const Real mid = (lo + hi) / Real(2);
    return {mid, f(mid), it};
}

}  // namespace amm_lab
