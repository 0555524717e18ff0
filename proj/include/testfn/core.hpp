#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "testfn/errors.hpp"

namespace testfn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real dimension m >= 1.  Holomorphic settings use m = 2n.
class Dimension {
  public:
    explicit Dimension(int m) : m_(m) {
        if (m < 1) throw std::domain_error("Dimension: m must be >= 1, got " + std::to_string(m));
    }
    static Dimension complex(int n) {
        if (n < 1) throw std::domain_error("Dimension: n must be >= 1, got " + std::to_string(n));
        return Dimension(2 * n);
    }
    int value() const { return m_; }
    bool operator==(const Dimension& o) const { return m_ == o.m_; }

  private:
    int m_;
};

/// Open interval (lo, hi) of radii, 0 <= lo < hi <= +inf.
struct Interval {
    double lo = 0.0;
    double hi = kInf;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo >= 0.0) || !(lo < hi))
            throw std::domain_error("Interval: need 0 <= lo < hi, got (" + std::to_string(lo_) +
                                    ", " + std::to_string(hi_) + ")");
    }
    bool contains(double r) const { return r > lo && r < hi; }
    bool unbounded() const { return std::isinf(hi); }
};

/// Point in the one-point compactification of R^m.
struct Point {
    std::vector<double> x;
    bool at_infinity = false;

    Point() = default;
    explicit Point(std::vector<double> coords) : x(std::move(coords)) {}
    Point(std::initializer_list<double> coords) : x(coords) {}

    static Point infinity(std::size_t dim) {
        Point p;
        p.x.assign(dim, 0.0);
        p.at_infinity = true;
        return p;
    }

    std::size_t dim() const { return x.size(); }

    double norm() const {
        if (at_infinity) return kInf;
        double s = 0.0;
        for (double c : x) s += c * c;
        return std::sqrt(s);
    }

    bool is_origin() const {
        if (at_infinity) return false;
        for (double c : x) {
            if (c != 0.0) return false;
        }
        return true;
    }

    bool operator==(const Point& o) const { return at_infinity == o.at_infinity && x == o.x; }
};

/// Radial harmonic coordinate: t for m=1, log t for m=2, -t^(2-m) for m>=3.
/// Strictly increasing in t on (0, inf).
inline double h_transform(Dimension m, double t) {
    if (!(t > 0.0)) throw std::domain_error("h_transform: t must be > 0");
    switch (m.value()) {
        case 1: return t;
        case 2: return std::log(t);
        default: return -std::pow(t, 2.0 - m.value());
    }
}

/// Inverse of h_transform.  For m >= 3 the range is (-inf, 0).
inline double h_inverse(Dimension m, double s) {
    switch (m.value()) {
        case 1: return s;
        case 2: return std::exp(s);
        default:
            if (!(s < 0.0))
                throw std::domain_error("h_inverse: s must be < 0 for m >= 3");
            return std::pow(-s, -1.0 / (m.value() - 2));
    }
}

/// Image of +inf under h_m: +inf for m<=2, 0 for m>=3.
inline double h_at_infinity(Dimension m) { return m.value() <= 2 ? kInf : 0.0; }

/// Inversion in the unit sphere.  Total on the compactified space:
/// 0 <-> inf, otherwise x / |x|^2.  An involution.
inline Point invert_point(const Point& p) {
    if (p.at_infinity) {
        Point zero;
        zero.x.assign(p.x.size(), 0.0);
        return zero;
    }
    if (p.is_origin()) return Point::infinity(p.x.size());
    double n2 = 0.0;
    for (double c : p.x) n2 += c * c;
    Point q;
    q.x.reserve(p.x.size());
    for (double c : p.x) q.x.push_back(c / n2);
    return q;
}

/// Kelvin transform of a value: u*(x*) = |x|^(m-2) u(x), paired with x* itself.
inline std::pair<Point, double> kelvin_value(Dimension m, double u_at_x, const Point& x) {
    if (x.at_infinity || x.is_origin())
        throw std::domain_error("kelvin_value: x must be finite and nonzero");
    Point xs = invert_point(x);
    double factor = std::pow(x.norm(), static_cast<double>(m.value() - 2));
    return {std::move(xs), factor * u_at_x};
}

/// Normalizing constant of the Riesz measure: Gamma(m/2) / (2 pi^(m/2) max{1, m-2}).
inline double riesz_constant(Dimension m) {
    const double md = static_cast<double>(m.value());
    const double denom = 2.0 * std::pow(M_PI, md / 2.0) * std::max(1.0, md - 2.0);
    return std::tgamma(md / 2.0) / denom;
}

}  // namespace testfn
