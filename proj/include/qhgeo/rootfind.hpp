#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "qhgeo/core.hpp"

namespace qhgeo {

// Bisection on a bracketing interval. f(lo) and f(hi) must have opposite
// signs (zero endpoints are returned immediately).
template <class F>
double bisect(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw numeric_error("bisect: no sign change over bracket");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Newton iteration guarded by a bisection bracket: steps leaving the current
// bracket fall back to its midpoint, so convergence never depends on the
// initial guess.
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, double x0, double xtol,
                     int max_iter = 100) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw numeric_error("newton_bisect: no sign change over bracket");
    double x = std::min(std::max(x0, lo), hi);
    for (int i = 0; i < max_iter; ++i) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (hi - lo <= xtol) break;
        const double d = df(x);
        double next = (d != 0.0) ? x - fx / d : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return 0.5 * (lo + hi);
}

// Expands [lo, hi] geometrically about its center until f changes sign.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double lo, double hi, int max_doublings = 200) {
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_doublings; ++i) {
        if (flo == 0.0) return {lo, lo};
        if (fhi == 0.0) return {hi, hi};
        if ((flo < 0.0) != (fhi < 0.0)) return {lo, hi};
        const double mid = 0.5 * (lo + hi);
        const double half = (hi - lo);  // doubles the width each round
        lo = mid - half;
        hi = mid + half;
        flo = f(lo);
        fhi = f(hi);
    }
    throw numeric_error("expand_bracket: no sign change found");
}

} // namespace qhgeo
