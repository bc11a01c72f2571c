#pragma once

#include <cmath>
#include <string>

#include "votemarket/errors.hpp"

namespace votemarket::detail {

/// Plain bisection on [lo, hi] down to the given bracket width. f may return
/// extended reals (+-inf are fine; only the sign is consulted). An exact zero
/// is returned immediately, which keeps dyadic roots exact. Requires a sign
/// change on the bracket.
template <typename F>
double bisect(F&& f, double lo, double hi, double tolerance, const char* what) {
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
        throw SolverError(std::string(what) + ": no sign change on the bracket");
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket exhausted at double precision
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace votemarket::detail
