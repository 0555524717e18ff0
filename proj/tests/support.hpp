#pragma once

// Brute-force oracles shared by the test suites.  Everything here goes
// through plain function evaluation only, independent of the library's
// derivative and measure code paths.

#include <cmath>
#include <random>
#include <vector>

#include "testfn/core.hpp"

namespace oracle {

// 5-point Cartesian Laplacian of f(x, y) with step h.
template <class F>
double five_point_laplacian(F&& f, double x, double y, double h) {
    return (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y)) / (h * h);
}

// Smallest 5-point Laplacian of Q(x) = q(|x|) over the annulus a < |x| < b,
// sampled on an n-by-n Cartesian grid (stencil kept inside the annulus).
template <class Q>
double min_grid_laplacian_2d(Q&& q, double a, double b, int n) {
    auto f = [&](double x, double y) { return q(std::sqrt(x * x + y * y)); };
    const double h = 2.0 * b / n;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = -b + (i + 0.5) * h;
            const double y = -b + (j + 0.5) * h;
            const double r = std::sqrt(x * x + y * y);
            if (r - h <= a || r + h >= b) continue;
            lo = std::min(lo, five_point_laplacian(f, x, y, h));
        }
    }
    return lo;
}

// Riesz mass of q(|x|) over the annulus a < |x| <= b in the plane:
// c_2 times the grid sum of the discrete Laplacian.  First-order accurate
// near the annulus rim, so compare loosely.
template <class Q>
double grid_riesz_mass_2d(Q&& q, double a, double b, int n) {
    auto f = [&](double x, double y) { return q(std::sqrt(x * x + y * y)); };
    const double h = 2.2 * b / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = -1.1 * b + (i + 0.5) * h;
            const double y = -1.1 * b + (j + 0.5) * h;
            const double r = std::sqrt(x * x + y * y);
            if (r <= a || r > b) continue;
            sum += five_point_laplacian(f, x, y, h) * h * h;
        }
    }
    return sum / (2.0 * M_PI);
}

// Uniform point in the planar annulus a < |z| < b (area measure).
inline std::pair<double, double> uniform_annulus_point(std::mt19937& rng, double a, double b) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(a * a + (b * b - a * a) * u(rng));
    const double th = 2.0 * M_PI * u(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

}  // namespace oracle
