#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "testfn/core.hpp"
#include "testfn/errors.hpp"
#include "testfn/piecewise.hpp"
#include "testfn/quadrature.hpp"
#include "testfn/tolerances.hpp"

namespace testfn {

/// A function of the radius on an interval (r1, r2): a closed-form family
/// scale * r^e * (log r)^b, a sampled grid (linear or step interpolation),
/// an exact integral of a monotone density, or a Kelvin transform of another
/// profile.  Immutable; evaluation is pure.
class RadialProfile {
  public:
    enum class Family { constant, power, log_power, samples, derived };

    struct ClosedForm {
        double scale;
        double exponent;
        double log_exponent;
        double offset = 0.0;  // additive constant; invisible to derivatives
    };
    struct DensityIntegral {
        MonotoneDensity dens;
        double orientation;  // +1 or -1
        double anchor;       // +inf allowed (tail integral)
        double anchor_value;
        int m;
    };
    struct KelvinOf {
        std::shared_ptr<const RadialProfile> inner;
        int m;
    };

    static RadialProfile constant(double c, Interval dom) {
        return RadialProfile(ClosedForm{c, 0.0, 0.0, 0.0}, dom);
    }
    static RadialProfile power(double scale, double exponent, Interval dom, double offset = 0.0) {
        return RadialProfile(ClosedForm{scale, exponent, 0.0, offset}, dom);
    }
    static RadialProfile log_power(double scale, double exponent, double log_exponent,
                                   Interval dom, double offset = 0.0) {
        validate_log_family(log_exponent, dom);
        return RadialProfile(ClosedForm{scale, exponent, log_exponent, offset}, dom);
    }
    static RadialProfile samples(std::vector<double> radii, std::vector<double> values,
                                 std::optional<Interval> dom = std::nullopt) {
        PiecewiseLinear pl(std::move(radii), std::move(values));
        Interval d = dom ? *dom : Interval(pl.knots().front(), pl.knots().back());
        return RadialProfile(std::move(pl), d);
    }
    static RadialProfile step_samples(double before_first, std::vector<double> radii,
                                      std::vector<double> values, Interval dom) {
        return RadialProfile(StepFunction(before_first, std::move(radii), std::move(values)),
                             dom);
    }
    static RadialProfile density_integral(MonotoneDensity dens, double orientation, double anchor,
                                          double anchor_value, Dimension m, Interval dom) {
        return RadialProfile(
            DensityIntegral{std::move(dens), orientation, anchor, anchor_value, m.value()}, dom);
    }
    static RadialProfile kelvin_of(RadialProfile inner, Dimension m) {
        const Interval id = inner.domain();
        const double lo = id.unbounded() ? 0.0 : 1.0 / id.hi;
        const double hi = id.lo == 0.0 ? kInf : 1.0 / id.lo;
        return RadialProfile(KelvinOf{std::make_shared<RadialProfile>(std::move(inner)), m.value()},
                             Interval(lo, hi));
    }

    double operator()(double r) const {
        if (!(r >= dom_.lo && r <= dom_.hi))
            throw std::domain_error("RadialProfile: r=" + std::to_string(r) +
                                    " outside domain closure");
        return eval(r);
    }

    const Interval& domain() const { return dom_; }

    Family family() const {
        if (const auto* cf = std::get_if<ClosedForm>(&rep_)) {
            if (cf->scale == 0.0 || (cf->exponent == 0.0 && cf->log_exponent == 0.0))
                return Family::constant;
            return cf->log_exponent == 0.0 ? Family::power : Family::log_power;
        }
        if (std::holds_alternative<PiecewiseLinear>(rep_) ||
            std::holds_alternative<StepFunction>(rep_))
            return Family::samples;
        return Family::derived;
    }

    bool is_step() const { return std::holds_alternative<StepFunction>(rep_); }
    bool is_closed_form() const { return std::holds_alternative<ClosedForm>(rep_); }
    const ClosedForm* closed_form() const { return std::get_if<ClosedForm>(&rep_); }
    const PiecewiseLinear* linear_rep() const { return std::get_if<PiecewiseLinear>(&rep_); }
    const StepFunction* step_rep() const { return std::get_if<StepFunction>(&rep_); }
    const DensityIntegral* density_rep() const { return std::get_if<DensityIntegral>(&rep_); }
    const KelvinOf* kelvin_rep() const { return std::get_if<KelvinOf>(&rep_); }

    /// Radii at which the profile (or its derivative) may have kinks.
    std::vector<double> knot_radii() const {
        std::vector<double> ks;
        if (const auto* pl = std::get_if<PiecewiseLinear>(&rep_)) ks = pl->knots();
        else if (const auto* st = std::get_if<StepFunction>(&rep_)) ks = st->knots();
        else if (const auto* di = std::get_if<DensityIntegral>(&rep_)) {
            if (const auto* pl = di->dens.linear_rep()) ks = pl->knots();
            else if (const auto* st = di->dens.step_rep()) ks = st->knots();
        } else if (const auto* kv = std::get_if<KelvinOf>(&rep_)) {
            for (double k : kv->inner->knot_radii())
                if (k > 0.0) ks.push_back(1.0 / k);
            std::sort(ks.begin(), ks.end());
        }
        std::erase_if(ks, [&](double k) { return !dom_.contains(k); });
        return ks;
    }

    /// Exact one-sided slopes where the representation defines them.
    /// Step-sampled profiles have jumps, not slopes.
    bool has_exact_derivative() const { return !is_step(); }

    double derivative_right(double r) const { return derivative(r, /*right=*/true); }
    double derivative_left(double r) const { return derivative(r, /*right=*/false); }

    RadialProfile restricted(Interval dom) const {
        RadialProfile out = *this;
        out.dom_ = dom;
        return out;
    }

  private:
    using Rep = std::variant<ClosedForm, PiecewiseLinear, StepFunction, DensityIntegral, KelvinOf>;

    RadialProfile(Rep rep, Interval dom) : rep_(std::move(rep)), dom_(dom) {}

    static void validate_log_family(double b, const Interval& dom) {
        if (b == 0.0) return;
        const bool integral_exp = b == std::floor(b);
        if (!integral_exp && dom.lo < 1.0)
            throw construction_error(
                "RadialProfile: fractional log exponent needs the domain inside (1, inf)");
        if (integral_exp && b < 0.0 && dom.lo < 1.0 && dom.hi > 1.0)
            throw construction_error(
                "RadialProfile: negative log exponent is singular at r = 1");
    }

    double eval(double r) const {
        return std::visit([&](const auto& rep) { return eval_rep(rep, r); }, rep_);
    }

    double eval_rep(const ClosedForm& cf, double r) const {
        if (cf.scale == 0.0) return cf.offset;
        double v = cf.scale;
        if (cf.exponent != 0.0) v *= std::pow(r, cf.exponent);
        if (cf.log_exponent != 0.0) v *= std::pow(std::log(r), cf.log_exponent);
        return v + cf.offset;
    }
    double eval_rep(const PiecewiseLinear& pl, double r) const { return pl(r); }
    double eval_rep(const StepFunction& st, double r) const { return st(r); }
    double eval_rep(const DensityIntegral& di, double r) const {
        const double e = 1.0 - di.m;
        if (std::isinf(di.anchor))
            return di.anchor_value - di.orientation * power_weight_tail_integral(di.dens, e, r);
        return di.anchor_value +
               di.orientation * power_weight_integral(di.dens, e, di.anchor, r);
    }
    double eval_rep(const KelvinOf& kv, double r) const {
        if (!(r > 0.0)) throw std::domain_error("RadialProfile: Kelvin evaluation needs r > 0");
        return std::pow(r, 2.0 - kv.m) * (*kv.inner)(1.0 / r);
    }

    double derivative(double r, bool right) const {
        if (const auto* cf = std::get_if<ClosedForm>(&rep_)) {
            if (cf->scale == 0.0) return 0.0;
            const double a = cf->exponent, b = cf->log_exponent;
            if (b == 0.0) return cf->scale * a * std::pow(r, a - 1.0);
            const double L = std::log(r);
            return cf->scale * std::pow(r, a - 1.0) *
                   (a * std::pow(L, b) + b * std::pow(L, b - 1.0));
        }
        if (const auto* pl = std::get_if<PiecewiseLinear>(&rep_))
            return right ? pl->slope_right(r) : pl->slope_left(r);
        if (std::holds_alternative<StepFunction>(rep_))
            throw std::domain_error("RadialProfile: step profile has no one-sided slopes");
        if (const auto* di = std::get_if<DensityIntegral>(&rep_)) {
            const double p = right ? di->dens.right_value(r) : di->dens.left_value(r);
            return di->orientation * p * std::pow(r, 1.0 - di->m);
        }
        const auto& kv = std::get<KelvinOf>(rep_);
        const double s = 1.0 / r;
        const double inner_v = (*kv.inner)(s);
        // r -> 1/r reverses orientation: the right slope in r uses the left slope in 1/r
        const double inner_d =
            right ? kv.inner->derivative_left(s) : kv.inner->derivative_right(s);
        return (2.0 - kv.m) * std::pow(r, 1.0 - kv.m) * inner_v -
               std::pow(r, -kv.m) * inner_d;
    }

    Rep rep_;
    Interval dom_;
};

// ---------------------------------------------------------------------------
// one-sided derivatives

struct DerivativePair {
    double left;
    double right;
};

namespace detail {

template <class F>
double onesided_limit(F&& quotient, double h0, const StepSchedule& sched) {
    // first-order quotients, twice Richardson-extrapolated
    double d0 = quotient(h0);
    double d1 = quotient(h0 * 0.5);
    double d2 = quotient(h0 * 0.25);
    double r1a = 2.0 * d1 - d0;
    double r1b = 2.0 * d2 - d1;
    double prev = (4.0 * r1b - r1a) / 3.0;
    double best = prev, best_diff = kInf;
    double h = h0 * 0.25;
    for (int k = 0; k < sched.max_halvings; ++k) {
        h *= 0.5;
        d0 = d1;
        d1 = d2;
        d2 = quotient(h);
        r1a = r1b;
        r1b = 2.0 * d2 - d1;
        const double cur = (4.0 * r1b - r1a) / 3.0;
        const double diff = std::abs(cur - prev);
        const double scale = std::max(1.0, std::abs(cur));
        if (diff <= sched.rel_tol * scale) return cur;
        if (diff < best_diff) {
            best_diff = diff;
            best = cur;
        }
        prev = cur;
    }
    if (best_diff <= 1e-6 * std::max(1.0, std::abs(best))) return best;  // noise floor
    throw numerical_instability_error(
        "onesided_derivatives: difference sequence did not converge");
}

}  // namespace detail

/// Left and right derivatives of a radial profile at an interior radius.
/// Uses the representation's exact one-sided slopes when available, otherwise
/// a geometric-step difference sequence with Richardson extrapolation.
inline DerivativePair onesided_derivatives(const RadialProfile& q, double r,
                                           StepSchedule sched = {}) {
    const Interval& dom = q.domain();
    if (!dom.contains(r))
        throw std::domain_error("onesided_derivatives: r must be interior to the domain");
    if (!sched.force_numeric && q.has_exact_derivative())
        return {q.derivative_left(r), q.derivative_right(r)};

    const double gap_left = r - dom.lo;
    const double gap_right = (dom.unbounded() ? std::max(1.0, r) : dom.hi - r);
    const double h0r = sched.initial_fraction * std::min(gap_right, std::max(1.0, std::abs(r)));
    const double h0l = sched.initial_fraction * std::min(gap_left, std::max(1.0, std::abs(r)));
    const double qr = q(r);
    const double right = detail::onesided_limit(
        [&](double h) { return (q(r + h) - qr) / h; }, h0r, sched);
    const double left = detail::onesided_limit(
        [&](double h) { return (qr - q(r - h)) / h; }, h0l, sched);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    if (left > right + 1e-7 * scale)
        throw numerical_instability_error(
            "onesided_derivatives: left derivative exceeds right derivative");
    return {left, right};
}

// ---------------------------------------------------------------------------
// convexity of h_m

struct ConvexityGridSpec {
    int points = 257;
    std::optional<Interval> window;  // in r; defaults to the profile domain
};

struct ConvexityViolation {
    double s_left, s_mid, s_right;
    double lhs, rhs;
};

struct ConvexityReport {
    bool passed = false;
    std::size_t points_used = 0;
    std::size_t pairs_tested = 0;
    std::optional<ConvexityViolation> violation;
};

namespace detail {

inline Interval convexity_window(const RadialProfile& q, const ConvexityGridSpec& grid) {
    const Interval dom = grid.window ? *grid.window : q.domain();
    const std::vector<double> ks = q.knot_radii();
    double lo = dom.lo, hi = dom.hi;
    if (std::isinf(hi)) hi = !ks.empty() ? std::max(2.0 * lo, ks.back()) : std::max(1.0, lo) * 1024.0;
    if (lo == 0.0) lo = (!ks.empty() && ks.front() > 0.0) ? ks.front() : hi / 1024.0;
    if (!(lo < hi)) throw insufficient_data_error("check_convex_of_h: empty evaluation window");
    return Interval(lo, hi);
}

}  // namespace detail

/// Midpoint-convexity test of q o h_m^{-1} on an evaluation grid in the h_m
/// coordinate.  The grid contains the profile's kink radii; pairs are taken
/// at dyadic index distances so both local and broad violations surface.
inline ConvexityReport check_convex_of_h(const RadialProfile& q, Dimension m,
                                         double rel_tolerance = 1e-9,
                                         ConvexityGridSpec grid = {}) {
    if (rel_tolerance < 0.0)
        throw std::invalid_argument("check_convex_of_h: tolerance must be >= 0");
    const Interval win = detail::convexity_window(q, grid);
    double s_lo = h_transform(m, win.lo);
    double s_hi = h_transform(m, win.hi);

    std::vector<double> s;
    const int n = std::max(grid.points, 2);
    s.reserve(static_cast<std::size_t>(n) + 16);
    for (int i = 0; i < n; ++i)
        s.push_back(s_lo + (s_hi - s_lo) * i / (n - 1));
    for (double k : q.knot_radii()) {
        if (k > win.lo && k < win.hi) s.push_back(h_transform(m, k));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() < 3)
        throw insufficient_data_error("check_convex_of_h: fewer than 3 evaluation points");

    // clamp against one-ulp drift of h_inverse(h(r)) at the window ends
    auto f = [&](double sv) { return q(std::clamp(h_inverse(m, sv), win.lo, win.hi)); };
    std::vector<double> fs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) fs[i] = f(s[i]);

    ConvexityReport report;
    report.points_used = s.size();
    for (std::size_t gap = 1; gap < s.size(); gap *= 2) {
        for (std::size_t i = 0; i + gap < s.size(); ++i) {
            const std::size_t j = i + gap;
            const double mid = 0.5 * (s[i] + s[j]);
            const double fmid = f(mid);
            const double chord = 0.5 * (fs[i] + fs[j]);
            const double scale =
                std::max({1.0, std::abs(fs[i]), std::abs(fs[j]), std::abs(fmid)});
            ++report.pairs_tested;
            if (fmid > chord + rel_tolerance * scale) {
                report.violation = ConvexityViolation{s[i], mid, s[j], fmid,
                                                      chord + rel_tolerance * scale};
                report.passed = false;
                return report;
            }
        }
    }
    report.passed = true;
    return report;
}

// ---------------------------------------------------------------------------
// reconstruction from a monotone density and the radial Riesz measure

/// q(r) = q_r0 + integral from r0 to r of p0(t) / t^(m-1) dt.  Exact per
/// segment for sampled densities.  The result is convex of h_m exactly when
/// p0 is increasing, which is enforced here.
inline RadialProfile build_profile_from_density(const MonotoneDensity& p0, double r0, double q_r0,
                                                Dimension m, Interval range) {
    if (p0.direction() != Direction::increasing)
        throw construction_error("build_profile_from_density: density must be increasing");
    if (!range.contains(r0))
        throw std::domain_error("build_profile_from_density: r0 must lie inside the range");
    return RadialProfile::density_integral(p0, +1.0, r0, q_r0, m, range);
}

/// Riesz mass of the radial subharmonic function q(|x|) on the annulus (a, b]:
/// (b^(m-1) q'->(b) - a^(m-1) q'->(a)) / max{1, m-2}.
inline double radial_riesz_measure(const RadialProfile& q, Dimension m, double a, double b,
                                   const ToleranceSet& tol = {}) {
    const Interval& dom = q.domain();
    if (!(a < b) || !(a > dom.lo) || !(b < dom.hi))
        throw std::domain_error("radial_riesz_measure: need [a,b] inside the profile domain");
    const double md = m.value();
    const double pa = std::pow(a, md - 1.0) * onesided_derivatives(q, a, tol.deriv).right;
    const double pb = std::pow(b, md - 1.0) * onesided_derivatives(q, b, tol.deriv).right;
    const double mass = (pb - pa) / std::max(1.0, md - 2.0);
    const double scale = std::max({1.0, std::abs(pa), std::abs(pb)});
    if (mass < -tol.riesz_negative_rel * scale)
        throw std::domain_error("radial_riesz_measure: negative mass " + std::to_string(mass) +
                                "; profile is not subharmonic on the annulus");
    return mass;
}

/// Mass of the atom the profile's Riesz measure places at the inner edge of
/// its domain (the pole for Green-type profiles): the limit of
/// a^(m-1) q'->(a) / max{1, m-2} as a decreases to the edge.
inline double radial_riesz_pole_mass(const RadialProfile& q, Dimension m,
                                     const ToleranceSet& tol = {}) {
    const Interval& dom = q.domain();
    const double md = m.value();
    const double hi_ref = dom.unbounded() ? std::max(1.0, 2.0 * dom.lo + 1.0) : dom.hi;
    double gap = 0.5 * (hi_ref - dom.lo);
    double prev = kInf;
    for (int i = 0; i < 120; ++i) {
        const double a = dom.lo + gap;
        const double p = std::pow(a, md - 1.0) * onesided_derivatives(q, a, tol.deriv).right /
                         std::max(1.0, md - 2.0);
        if (std::abs(p - prev) <= 1e-9 * std::max(1.0, std::abs(p))) return p;
        prev = p;
        gap *= 0.5;
    }
    throw numerical_instability_error("radial_riesz_pole_mass: limit did not settle");
}

/// Kelvin transform as a profile: q*(r) = r^(2-m) q(1/r) on the inverted domain.
inline RadialProfile kelvin_profile(RadialProfile q, Dimension m) {
    return RadialProfile::kelvin_of(std::move(q), m);
}

/// Density samples p(r_i) = r_i^(m-1) q'->(r_i); increasing exactly when q is
/// convex of h_m (used to refute convexity by exhibiting a violation).
inline std::vector<double> radial_density_samples(const RadialProfile& q, Dimension m,
                                                  const std::vector<double>& radii,
                                                  StepSchedule sched = {}) {
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii)
        out.push_back(std::pow(r, m.value() - 1.0) * onesided_derivatives(q, r, sched).right);
    return out;
}

// ---------------------------------------------------------------------------

/// A radial positive measure: masses on half-open annuli (a, b] plus optional
/// atoms at the origin and at infinity.
class RadialMeasure {
  public:
    struct Annulus {
        double a, b, mass;
    };

    void add_annulus(double a, double b, double mass, double tolerance = 1e-12) {
        if (!(a < b)) throw std::invalid_argument("RadialMeasure: need a < b");
        if (mass < -tolerance)
            throw std::domain_error("RadialMeasure: negative annulus mass");
        annuli_.push_back({a, b, std::max(mass, 0.0)});
    }
    void set_origin_mass(double mass) {
        if (mass < 0.0) throw std::domain_error("RadialMeasure: negative pole mass");
        origin_mass_ = mass;
    }
    void set_infinity_mass(double mass) {
        if (mass < 0.0) throw std::domain_error("RadialMeasure: negative pole mass");
        infinity_mass_ = mass;
    }

    double origin_mass() const { return origin_mass_; }
    double infinity_mass() const { return infinity_mass_; }
    const std::vector<Annulus>& annuli() const { return annuli_; }

    double total() const {
        double t = origin_mass_ + infinity_mass_;
        for (const auto& an : annuli_) t += an.mass;
        return t;
    }

    /// Riesz measure of a validated profile over a radius partition.
    static RadialMeasure from_profile(const RadialProfile& q, Dimension m,
                                      const std::vector<double>& partition,
                                      const ToleranceSet& tol = {}) {
        RadialMeasure out;
        for (std::size_t i = 0; i + 1 < partition.size(); ++i)
            out.add_annulus(partition[i], partition[i + 1],
                            radial_riesz_measure(q, m, partition[i], partition[i + 1], tol));
        return out;
    }

  private:
    std::vector<Annulus> annuli_;
    double origin_mass_ = 0.0;
    double infinity_mass_ = 0.0;
};

}  // namespace testfn
