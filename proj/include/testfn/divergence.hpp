#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace testfn {

enum class ClassKind { convergent, divergent, unknown };

enum class ClassMode {
    none,                    // unknown, or not applicable
    proper,                  // bounded integrand on a bounded interval
    symbolic_tail,           // exact tail-exponent calculus on parametric families
    heuristic_partial_sums,  // growth of the partial-integral trace
};

struct TracePoint {
    double cutoff;
    double value;
};

/// Outcome of classifying an improper integral, with the partial-integral
/// trace that backs a heuristic call.
struct DivergenceVerdict {
    ClassKind kind = ClassKind::unknown;
    ClassMode mode = ClassMode::none;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::vector<TracePoint> trace;
    std::string note;

    bool is_convergent() const { return kind == ClassKind::convergent; }
    bool is_divergent() const { return kind == ClassKind::divergent; }
    bool is_unknown() const { return kind == ClassKind::unknown; }

    static DivergenceVerdict convergent(double v, ClassMode m, std::vector<TracePoint> tr = {},
                                        std::string n = "") {
        return {ClassKind::convergent, m, v, std::move(tr), std::move(n)};
    }
    static DivergenceVerdict divergent(ClassMode m, std::vector<TracePoint> tr = {},
                                       std::string n = "") {
        return {ClassKind::divergent, m, std::numeric_limits<double>::quiet_NaN(), std::move(tr),
                std::move(n)};
    }
    static DivergenceVerdict indeterminate(std::vector<TracePoint> tr = {}, std::string n = "") {
        return {ClassKind::unknown, ClassMode::none, std::numeric_limits<double>::quiet_NaN(),
                std::move(tr), std::move(n)};
    }
};

/// Leading behaviour of a positive factor near the improper endpoint,
/// written in the local gap coordinate u:  coeff * u^power * L^logpow,
/// where L = log(1/u) as u -> 0+ and L = log u as u -> inf.
struct FactorTail {
    double coeff = 0.0;
    double power = 0.0;
    double logpow = 0.0;

    static FactorTail constant(double c) { return {c, 0.0, 0.0}; }
    bool vanishes() const { return coeff == 0.0; }
};

inline FactorTail operator*(const FactorTail& a, const FactorTail& b) {
    return {a.coeff * b.coeff, a.power + b.power, a.logpow + b.logpow};
}

enum class EndpointKind {
    gap,        // u -> 0+ (finite endpoint approached through its gap)
    infinity_,  // u -> inf
};

/// Exact convergence rule for integrals of u^power * L^logpow near the endpoint.
inline bool tail_converges(EndpointKind kind, const FactorTail& t) {
    if (t.vanishes()) return true;
    if (kind == EndpointKind::gap)
        return t.power > -1.0 || (t.power == -1.0 && t.logpow < -1.0);
    return t.power < -1.0 || (t.power == -1.0 && t.logpow < -1.0);
}

/// Heuristic divergence rule on a partial-integral trace sampled at cutoff
/// doublings: the last `doublings` steps must each grow the integral by more
/// than `factor`.
inline bool trace_shows_growth(const std::vector<TracePoint>& trace, int doublings,
                               double factor) {
    if (static_cast<int>(trace.size()) < doublings + 1) return false;
    for (std::size_t i = trace.size() - doublings; i < trace.size(); ++i) {
        const double prev = trace[i - 1].value;
        const double cur = trace[i].value;
        if (!(prev > 0.0) || !(cur > factor * prev)) return false;
    }
    return true;
}

}  // namespace testfn
