#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "testfn/core.hpp"
#include "testfn/divergence.hpp"
#include "testfn/errors.hpp"
#include "testfn/quadrature.hpp"

namespace testfn {

enum class Direction { increasing, decreasing };

inline const char* to_string(Direction d) {
    return d == Direction::increasing ? "increasing" : "decreasing";
}

/// Piecewise-linear interpolant through strictly increasing knots,
/// extended by its end values outside the knot range.
class PiecewiseLinear {
  public:
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (xs_.empty() || xs_.size() != ys_.size())
            throw std::invalid_argument("PiecewiseLinear: need equally many knots and values");
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (!(xs_[i] > xs_[i - 1]))
                throw std::invalid_argument("PiecewiseLinear: knots must be strictly increasing");
        }
    }

    double operator()(double t) const {
        if (t <= xs_.front()) return ys_.front();
        if (t >= xs_.back()) return ys_.back();
        const std::size_t i = segment_of(t);
        const double w = (t - xs_[i]) / (xs_[i + 1] - xs_[i]);
        return ys_[i] + w * (ys_[i + 1] - ys_[i]);
    }

    // Slope of the segment left/right of t (0 in the clamped regions).
    double slope_right(double t) const {
        if (t < xs_.front() || t >= xs_.back()) return 0.0;
        const std::size_t i = segment_of(t);
        return slope(i);
    }
    double slope_left(double t) const {
        if (t <= xs_.front() || t > xs_.back()) return 0.0;
        if (t == xs_.back()) return slope(xs_.size() - 2);
        const std::size_t i = segment_of(t);
        return t == xs_[i] && i > 0 ? slope(i - 1) : slope(i);
    }

    bool monotone(Direction dir, double tolerance = 0.0) const {
        for (std::size_t i = 1; i < ys_.size(); ++i) {
            const double step = ys_[i] - ys_[i - 1];
            if (dir == Direction::increasing ? step < -tolerance : step > tolerance) return false;
        }
        return true;
    }

    const std::vector<double>& knots() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

  private:
    std::size_t segment_of(double t) const {
        // largest i with xs_[i] <= t, t inside (front, back)
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
        return static_cast<std::size_t>(it - xs_.begin()) - 1;
    }
    double slope(std::size_t i) const {
        return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    }

    std::vector<double> xs_, ys_;
};

/// Right-continuous step function: value `before_first` left of the first
/// knot, `after[i]` on [knots[i], knots[i+1]).
class StepFunction {
  public:
    StepFunction(double before_first, std::vector<double> knots, std::vector<double> after)
        : before_(before_first), knots_(std::move(knots)), after_(std::move(after)) {
        if (knots_.size() != after_.size())
            throw std::invalid_argument("StepFunction: need one value per knot");
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            if (!(knots_[i] > knots_[i - 1]))
                throw std::invalid_argument("StepFunction: knots must be strictly increasing");
        }
    }

    double operator()(double t) const {
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        if (it == knots_.begin()) return before_;
        return after_[static_cast<std::size_t>(it - knots_.begin()) - 1];
    }

    double left_limit(double t) const {
        const auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
        if (it == knots_.begin()) return before_;
        return after_[static_cast<std::size_t>(it - knots_.begin()) - 1];
    }

    bool monotone(Direction dir, double tolerance = 0.0) const {
        double prev = before_;
        for (double v : after_) {
            const double step = v - prev;
            if (dir == Direction::increasing ? step < -tolerance : step > tolerance) return false;
            prev = v;
        }
        return true;
    }

    double before_first() const { return before_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values_after() const { return after_; }

  private:
    double before_;
    std::vector<double> knots_, after_;
};

/// A monotone density d(t): piecewise-linear or step samples, or the
/// parametric family scale * t^-alpha * (log t)^-beta.  Monotonicity in the
/// declared direction is enforced at construction.
class MonotoneDensity {
  public:
    struct Parametric {
        double scale;  // >= 0
        double alpha;
        double beta;
    };

    static MonotoneDensity linear_samples(Direction dir, std::vector<double> ts,
                                          std::vector<double> vs, Interval domain) {
        PiecewiseLinear pl(std::move(ts), std::move(vs));
        if (!pl.monotone(dir))
            throw construction_error(std::string("MonotoneDensity: samples are not ") +
                                     to_string(dir));
        return MonotoneDensity(dir, std::move(pl), domain);
    }

    static MonotoneDensity steps(Direction dir, double before_first, std::vector<double> knots,
                                 std::vector<double> after, Interval domain) {
        StepFunction st(before_first, std::move(knots), std::move(after));
        if (!st.monotone(dir))
            throw construction_error(std::string("MonotoneDensity: steps are not ") +
                                     to_string(dir));
        return MonotoneDensity(dir, std::move(st), domain);
    }

    static MonotoneDensity parametric(Direction dir, double scale, double alpha, double beta,
                                      Interval domain) {
        if (!(scale >= 0.0))
            throw construction_error("MonotoneDensity: parametric scale must be >= 0");
        if (beta != 0.0 && domain.lo < 1.0)
            throw construction_error(
                "MonotoneDensity: log-power family needs the domain inside (1, inf)");
        Parametric p{scale, alpha, beta};
        if (!parametric_monotone(p, dir, domain))
            throw construction_error(std::string("MonotoneDensity: family is not ") +
                                     to_string(dir) + " on its domain");
        return MonotoneDensity(dir, p, domain);
    }

    static MonotoneDensity constant(double c, Interval domain,
                                    Direction dir = Direction::decreasing) {
        if (!(c >= 0.0)) throw construction_error("MonotoneDensity: constant must be >= 0");
        return MonotoneDensity(dir, Parametric{c, 0.0, 0.0}, domain);
    }

    /// Candidate density that skips the monotonicity check.  For diagnostics
    /// that must hold the offending samples in order to report on them.
    static MonotoneDensity unchecked_linear_samples(Direction dir, std::vector<double> ts,
                                                    std::vector<double> vs, Interval domain) {
        return MonotoneDensity(dir, PiecewiseLinear(std::move(ts), std::move(vs)), domain);
    }

    double operator()(double t) const {
        return std::visit([&](const auto& r) { return eval(r, t); }, rep_);
    }
    double right_value(double t) const { return (*this)(t); }
    double left_value(double t) const {
        if (const auto* st = std::get_if<StepFunction>(&rep_)) return st->left_limit(t);
        return (*this)(t);
    }

    Direction direction() const { return dir_; }
    const Interval& domain() const { return dom_; }
    bool is_parametric() const { return std::holds_alternative<Parametric>(rep_); }
    const Parametric* parametric_params() const { return std::get_if<Parametric>(&rep_); }
    const PiecewiseLinear* linear_rep() const { return std::get_if<PiecewiseLinear>(&rep_); }
    const StepFunction* step_rep() const { return std::get_if<StepFunction>(&rep_); }

    std::vector<double> interior_knots() const {
        std::vector<double> ks;
        if (const auto* pl = std::get_if<PiecewiseLinear>(&rep_)) ks = pl->knots();
        else if (const auto* st = std::get_if<StepFunction>(&rep_)) ks = st->knots();
        std::erase_if(ks, [&](double k) { return !dom_.contains(k); });
        return ks;
    }

    bool nonnegative() const {
        if (const auto* pl = std::get_if<PiecewiseLinear>(&rep_))
            return std::all_of(pl->values().begin(), pl->values().end(),
                               [](double v) { return v >= 0.0; });
        if (const auto* st = std::get_if<StepFunction>(&rep_)) {
            if (st->before_first() < 0.0) return false;
            return std::all_of(st->values_after().begin(), st->values_after().end(),
                               [](double v) { return v >= 0.0; });
        }
        return true;  // parametric scale >= 0
    }

    /// Exact leading behaviour as t -> inf (clamped samples are constants).
    FactorTail tail_at_infinity() const {
        if (const auto* p = std::get_if<Parametric>(&rep_))
            return {p->scale, -p->alpha, -p->beta};
        return FactorTail::constant((*this)(std::get_if<PiecewiseLinear>(&rep_)
                                                ? linear_rep()->knots().back()
                                                : step_rep()->knots().back()));
    }

    /// Exact leading behaviour as t -> edge- in the gap u = edge - t.
    FactorTail edge_tail(double edge) const {
        const double v = (*this)(edge);
        if (v != 0.0) return FactorTail::constant(v);
        if (const auto* pl = std::get_if<PiecewiseLinear>(&rep_)) {
            const double s = pl->slope_left(std::min(edge, pl->knots().back()));
            if (s != 0.0 && edge <= pl->knots().back()) return {std::abs(s), 1.0, 0.0};
        }
        return FactorTail::constant(0.0);
    }

    MonotoneDensity scaled(double factor) const {
        if (!(factor > 0.0)) throw std::domain_error("MonotoneDensity::scaled: factor must be > 0");
        MonotoneDensity out = *this;
        std::visit([&](auto& r) { scale_rep(r, factor); }, out.rep_);
        return out;
    }

  private:
    using Rep = std::variant<PiecewiseLinear, StepFunction, Parametric>;

    MonotoneDensity(Direction dir, Rep rep, Interval dom)
        : dir_(dir), rep_(std::move(rep)), dom_(dom) {}

    static double eval(const PiecewiseLinear& pl, double t) { return pl(t); }
    static double eval(const StepFunction& st, double t) { return st(t); }
    static double eval(const Parametric& p, double t) {
        if (!(t > 0.0)) throw std::domain_error("MonotoneDensity: t must be > 0");
        double v = p.scale * std::pow(t, -p.alpha);
        if (p.beta != 0.0) v *= std::pow(std::log(t), -p.beta);
        return v;
    }

    static void scale_rep(PiecewiseLinear& pl, double f) {
        std::vector<double> ys = pl.values();
        for (double& y : ys) y *= f;
        pl = PiecewiseLinear(pl.knots(), std::move(ys));
    }
    static void scale_rep(StepFunction& st, double f) {
        std::vector<double> ys = st.values_after();
        for (double& y : ys) y *= f;
        st = StepFunction(st.before_first() * f, st.knots(), std::move(ys));
    }
    static void scale_rep(Parametric& p, double f) { p.scale *= f; }

    // sign of d/dt: -sign(alpha) for pure powers; -sign(alpha*log t + beta)
    // for log-powers, whose domain sits inside (1, inf)
    static bool parametric_monotone(const Parametric& p, Direction dir, const Interval& dom) {
        if (p.scale == 0.0 || (p.alpha == 0.0 && p.beta == 0.0)) return true;
        if (p.beta == 0.0)
            return dir == Direction::decreasing ? p.alpha >= 0.0 : p.alpha <= 0.0;
        auto ok = [&](double l) {
            const double u = std::isinf(l) ? (p.alpha != 0.0 ? p.alpha * l : p.beta)
                                           : p.alpha * l + p.beta;
            return dir == Direction::decreasing ? u >= 0.0 : u <= 0.0;
        };
        const double l_lo = std::log(std::max(dom.lo, 1.0));
        const double l_hi = dom.unbounded() ? kInf : std::log(dom.hi);
        return ok(l_lo) && ok(l_hi);
    }

    Direction dir_;
    Rep rep_;
    Interval dom_;
};

namespace detail {

// antiderivative of t^e
inline double power_primitive(double e, double t) {
    if (e == -1.0) return std::log(t);
    return std::pow(t, e + 1.0) / (e + 1.0);
}

inline double power_primitive_diff(double e, double a, double b) {
    return power_primitive(e, b) - power_primitive(e, a);
}

}  // namespace detail

/// Integral of p(t) * t^e over [a, b], exact per segment for sampled and
/// power-family densities, adaptive Simpson for log-power families.
inline double power_weight_integral(const MonotoneDensity& p, double e, double a, double b,
                                    const QuadratureControl& ctl = {}) {
    if (a == b) return 0.0;
    if (a > b) return -power_weight_integral(p, e, b, a, ctl);
    if (const auto* par = p.parametric_params()) {
        if (par->scale == 0.0) return 0.0;
        if (par->beta == 0.0)
            return par->scale * detail::power_primitive_diff(e - par->alpha, a, b);
        return adaptive_simpson([&](double t) { return p(t) * std::pow(t, e); }, a, b, ctl);
    }
    // sampled reps: exact over the knot partition
    const std::vector<double>& ks =
        p.linear_rep() ? p.linear_rep()->knots() : p.step_rep()->knots();
    std::vector<double> cuts{a};
    for (double k : ks) {
        if (k > a && k < b) cuts.push_back(k);
    }
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double x0 = cuts[i], x1 = cuts[i + 1];
        if (const auto* pl = p.linear_rep()) {
            const double mid = 0.5 * (x0 + x1);
            const double s = pl->slope_right(mid);
            const double y_mid = (*pl)(mid);
            const double A = y_mid - s * mid;
            total += A * detail::power_primitive_diff(e, x0, x1) +
                     s * detail::power_primitive_diff(e + 1.0, x0, x1);
        } else {
            const double v = p(0.5 * (x0 + x1));
            total += v * detail::power_primitive_diff(e, x0, x1);
        }
    }
    return total;
}

/// Integral of p(t) * t^e over [r, inf).  Requires a convergent tail.
inline double power_weight_tail_integral(const MonotoneDensity& p, double e, double r,
                                         const QuadratureControl& ctl = {}) {
    const FactorTail tail = p.tail_at_infinity() * FactorTail{1.0, e, 0.0};
    if (!tail_converges(EndpointKind::infinity_, tail))
        throw construction_error("power_weight_tail_integral: divergent tail at infinity");
    if (tail.vanishes()) {
        // density is exactly zero beyond its last knot
        double last = r;
        if (const auto* pl = p.linear_rep()) last = pl->knots().back();
        if (const auto* st = p.step_rep()) last = st->knots().back();
        return last > r ? power_weight_integral(p, e, r, last, ctl) : 0.0;
    }
    if (const auto* par = p.parametric_params()) {
        if (par->beta == 0.0) {
            // c * t^(e-alpha), exponent < -1
            const double ee = e - par->alpha;
            return -par->scale * detail::power_primitive(ee, r);
        }
        // no elementary antiderivative: cutoff doubling until increments settle
        double total = 0.0, cutoff = std::max(2.0 * r, r + 1.0);
        double prev_cut = r;
        for (int i = 0; i < 80; ++i) {
            const double inc = power_weight_integral(p, e, prev_cut, cutoff, ctl);
            total += inc;
            if (std::abs(inc) <= std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total))) return total;
            prev_cut = cutoff;
            cutoff *= 2.0;
        }
        throw numerical_instability_error(
            "power_weight_tail_integral: cutoff refinement did not settle");
    }
    // clamped sampled density with positive limit: exact constant tail
    double last = r;
    if (const auto* pl = p.linear_rep()) last = std::max(r, pl->knots().back());
    if (const auto* st = p.step_rep()) last = std::max(r, st->knots().back());
    const double v = p(last);
    double total = last > r ? power_weight_integral(p, e, r, last, ctl) : 0.0;
    return total - v * detail::power_primitive(e, last);
}

}  // namespace testfn
