#pragma once

#include <cmath>
#include <utility>

#include "testfn/errors.hpp"

namespace testfn {

struct QuadratureControl {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 60;
};

namespace detail {

template <class F>
double simpson(F& f, double a, double fa, double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double fa, double b, double fb, double m, double fm,
                            double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b].  Integrand must be finite on the closed interval.
template <class F>
double adaptive_simpson(F&& f, double a, double b, QuadratureControl ctl = {}) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw numerical_instability_error("adaptive_simpson: integrand not finite on interval");
    const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    const double eps = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(whole));
    return sign * detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, eps, ctl.max_depth);
}

}  // namespace testfn
