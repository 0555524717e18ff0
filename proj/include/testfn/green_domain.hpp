#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "testfn/core.hpp"
#include "testfn/errors.hpp"
#include "testfn/radial_profile.hpp"

namespace testfn {

/// Model domain with a closed-form Green function: a ball with the pole at
/// the center (any dimension) or a disk with an arbitrary interior pole
/// (m = 2, Moebius form).  Scaled so that -g carries unit Riesz mass at the
/// pole, which makes the harmonic measure of the extended Green function a
/// probability measure.
class ModelDomain {
  public:
    static ModelDomain ball(double R, Dimension m) {
        if (std::isinf(R))
            throw construction_error(
                "ModelDomain: R = +inf has no Green function in this normalization; "
                "use a finite radius");
        if (!(R > 0.0)) throw std::domain_error("ModelDomain: need R > 0");
        return ModelDomain(R, m, {0.0, 0.0}, /*center=*/true);
    }

    static ModelDomain disk(double R, std::complex<double> pole) {
        if (std::isinf(R))
            throw construction_error("ModelDomain: R = +inf has no Green function");
        if (!(R > 0.0)) throw std::domain_error("ModelDomain: need R > 0");
        if (!(std::abs(pole) < R))
            throw std::domain_error("ModelDomain: pole must be interior to the disk");
        return ModelDomain(R, Dimension(2), pole, pole == std::complex<double>(0.0, 0.0));
    }

    Dimension dim() const { return m_; }
    double radius() const { return R_; }
    bool center_pole() const { return center_; }
    std::complex<double> pole() const { return pole_; }

    Point pole_point() const {
        Point p;
        p.x.assign(static_cast<std::size_t>(m_.value()), 0.0);
        if (!center_) {
            p.x[0] = pole_.real();
            p.x[1] = pole_.imag();
        }
        return p;
    }

    bool contains(const Point& x) const { return !x.at_infinity && x.norm() < R_; }
    double boundary_distance(const Point& x) const { return R_ - x.norm(); }

    /// g as a function of |x| (center-pole domains).
    double green_radius(double r) const {
        if (!center_) throw std::domain_error("ModelDomain: radial Green needs a center pole");
        if (!(r >= 0.0 && r < R_)) throw std::domain_error("ModelDomain: radius outside domain");
        if (r == 0.0) return m_.value() == 1 ? R_ : kInf;
        switch (m_.value()) {
            case 1: return R_ - r;
            case 2: return std::log(R_ / r);
            default: return std::pow(r, 2.0 - m_.value()) - std::pow(R_, 2.0 - m_.value());
        }
    }

    double green(std::complex<double> z) const {
        if (m_.value() != 2)
            throw std::domain_error("ModelDomain: complex evaluation needs m = 2");
        if (!(std::abs(z) < R_)) throw std::domain_error("ModelDomain: point outside domain");
        if (z == pole_) return kInf;
        if (center_) return std::log(R_ / std::abs(z));
        const std::complex<double> num = R_ * R_ - std::conj(pole_) * z;
        const std::complex<double> den = R_ * (z - pole_);
        return std::log(std::abs(num / den));
    }

    double green(const Point& x) const {
        if (!contains(x)) throw std::domain_error("ModelDomain: point outside domain");
        if (center_) return green_radius(x.norm());
        return green(std::complex<double>(x.x.at(0), x.x.at(1)));
    }

    /// g and -g as radial profiles on (0, R) (center-pole domains).
    RadialProfile green_profile() const { return signed_green_profile(+1.0); }
    RadialProfile minus_green_profile() const { return signed_green_profile(-1.0); }

  private:
    ModelDomain(double R, Dimension m, std::complex<double> pole, bool center)
        : R_(R), m_(m), pole_(pole), center_(center) {}

    RadialProfile signed_green_profile(double sign) const {
        if (!center_)
            throw std::domain_error("ModelDomain: radial Green profile needs a center pole");
        const Interval dom(0.0, R_);
        switch (m_.value()) {
            case 1: return RadialProfile::power(-sign, 1.0, dom, sign * R_);
            case 2: return RadialProfile::log_power(-sign, 0.0, 1.0, dom, sign * std::log(R_));
            default: {
                const double c = std::pow(R_, 2.0 - m_.value());
                return RadialProfile::power(sign, 2.0 - m_.value(), dom, -sign * c);
            }
        }
    }

    double R_;
    Dimension m_;
    std::complex<double> pole_;
    bool center_;
};

/// Green function value; +inf marker at the pole.
inline double green_value(const ModelDomain& domain, const Point& x) { return domain.green(x); }

/// Radius r(t) of the level set D_t = {g > t} for center-pole domains.
inline double level_radius(const ModelDomain& domain, double t) {
    if (!domain.center_pole())
        throw std::domain_error("level_radius: closed-form level radius needs a center pole");
    if (!(t > 0.0)) throw std::domain_error("level_radius: need t > 0");
    const double R = domain.radius();
    switch (domain.dim().value()) {
        case 1:
            if (!(t < R)) throw std::domain_error("level_radius: t at or above sup g");
            return R - t;
        case 2: return R * std::exp(-t);
        default: {
            const int m = domain.dim().value();
            return std::pow(t + std::pow(R, 2.0 - m), -1.0 / (m - 2));
        }
    }
}

/// Harmonic measure of the boundary arc (theta1, theta2) seen from the center
/// of a disk: arc length over the full angle.
inline double harmonic_measure_center(const ModelDomain& domain, double theta1, double theta2) {
    if (domain.dim().value() != 2 || !domain.center_pole())
        throw std::domain_error("harmonic_measure_center: needs a disk with center pole");
    if (!(theta1 <= theta2) || theta2 - theta1 > 2.0 * M_PI + 1e-15)
        throw std::domain_error("harmonic_measure_center: need theta1 <= theta2 <= theta1 + 2pi");
    return (theta2 - theta1) / (2.0 * M_PI);
}

/// Superlevel set D_t = {x in D : g(x) > t}; geometric radius in the
/// center-pole case, membership test otherwise.
class LevelSet {
  public:
    LevelSet(ModelDomain domain, double t) : domain_(std::move(domain)), t_(t) {
        if (!(t > 0.0)) throw std::domain_error("LevelSet: need t > 0");
        if (domain_.center_pole()) radius_ = level_radius(domain_, t);
    }

    double t() const { return t_; }
    const ModelDomain& domain() const { return domain_; }

    bool contains(const Point& x) const {
        if (!domain_.contains(x)) return false;
        if (x == domain_.pole_point()) return true;
        return domain_.green(x) > t_;
    }

    double radius() const {
        if (!domain_.center_pole())
            throw std::domain_error("LevelSet: general-pole level sets are implicit");
        return radius_;
    }

  private:
    ModelDomain domain_;
    double t_;
    double radius_ = 0.0;
};

}  // namespace testfn
