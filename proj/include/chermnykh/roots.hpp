#pragma once

#include <cmath>
#include <utility>

namespace chermnykh {

/// Bisection on a bracket with f(lo), f(hi) of opposite sign, run until the
/// midpoint is no longer representable strictly inside the interval.
/// Returns the endpoint with the smaller |f|.
template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo) {
    double a = lo;
    double b = hi;
    double fa = f_lo;
    double fb = f(b);
    while (true) {
        const double m = a + 0.5 * (b - a);
        if (!(m > a && m < b)) {
            break;
        }
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace chermnykh
