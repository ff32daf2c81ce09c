#pragma once

#include "s3fol/foliation.hpp"
#include "s3fol/ode.hpp"

#include <variant>
#include <vector>

namespace s3fol {

namespace detail {

inline double wrap_pi(double x) { return std::remainder(x, 2.0 * pi); }

inline double wrap_2pi(double x) {
    const double r = std::fmod(x, 2.0 * pi);
    return r < 0.0 ? r + 2.0 * pi : r;
}

inline double angle_of(const Vec4& y, int which) {
    return which == 0 ? std::atan2(y[1], y[0]) : std::atan2(y[3], y[2]);
}

inline double radius_of(const Vec4& y, int which) {
    return which == 0 ? std::hypot(y[0], y[1]) : std::hypot(y[2], y[3]);
}

struct KernelRhs {
    FoliationSpec spec;
    double direction = 1.0; // +1 forward along Y, -1 backward
    Vec4 operator()(const Vec4& y) const {
        return scale(direction, kernel_field(spec, CPoint::from_coords(y)).v);
    }
};

} // namespace detail

/// Integrates the common kernel flow on S^3 while maintaining continuous
/// lifts of both Hopf angles. Steps whose angle increment cannot be
/// unwrapped reliably (more than pi/2 per half-step) are rejected and
/// retried smaller, so the lifts never alias. The angle lift is frozen
/// while the corresponding radius is below 1e-12 (trajectories on a Hopf
/// circle, where the other angle is undefined).
class FlowTracker {
public:
    struct State {
        double t;
        PointS3 p;
        double theta1_lift;
        double theta2_lift;
    };

    FlowTracker(const FoliationSpec& spec, const PointS3& p0, double ode_tol, int direction = 1)
        : ode_(detail::KernelRhs{spec, direction >= 0 ? 1.0 : -1.0}, p0.coords(), 0.0,
               std::max(1e-15, 0.01 * ode_tol), std::max(1e-15, 0.01 * ode_tol)),
          th1_(p0.theta1()),
          th2_(p0.theta2()) {}

    State current() const {
        return {ode_.time(), PointS3(CPoint::from_coords(ode_.state()).z1,
                                     CPoint::from_coords(ode_.state()).z2),
                th1_, th2_};
    }

    double max_renorm() const { return max_renorm_; }

    State advance() {
        const OdeStepRecord& rec = ode_.step([](const OdeStepRecord& r) {
            for (int which = 0; which < 2; ++which) {
                const Vec4 y0 = r.dense(0.0), ym = r.dense(0.5), y1 = r.dense(1.0);
                const double rmin = std::min({detail::radius_of(y0, which),
                                              detail::radius_of(ym, which),
                                              detail::radius_of(y1, which)});
                if (rmin < 1e-12) continue;
                const double a0 = detail::angle_of(y0, which);
                const double am = detail::angle_of(ym, which);
                const double a1 = detail::angle_of(y1, which);
                if (std::abs(detail::wrap_pi(am - a0)) > pi / 2.0) return true;
                if (std::abs(detail::wrap_pi(a1 - am)) > pi / 2.0) return true;
            }
            return false;
        });
        th1_before_ = th1_;
        th2_before_ = th2_;
        th1_ += step_increment(rec, 0);
        th2_ += step_increment(rec, 1);
        last_ = rec;
        // The exact flow preserves |z|; renormalize only to absorb roundoff.
        Vec4 y = ode_.state();
        const double n = norm(y);
        max_renorm_ = std::max(max_renorm_, std::abs(n - 1.0));
        if (std::abs(n - 1.0) > 1e-14) ode_.set_state(scale(1.0 / n, y));
        return current();
    }

    /// Solve lift(angle)(t) = target inside the last accepted step.
    State cross_last(int which, double target) const {
        double lo = 0.0, hi = 1.0;
        const double flo = lift_at(lo, which) - target;
        const double fhi = lift_at(hi, which) - target;
        if (flo * fhi > 0.0) throw numerical_error("FlowTracker: crossing not bracketed");
        for (int it = 0; it < 90; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = lift_at(mid, which) - target;
            if (flo * fm <= 0.0)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-16) break;
        }
        const double s = 0.5 * (lo + hi);
        const Vec4 y = last_.dense(s);
        const CPoint cp = CPoint::from_coords(y);
        return {last_.t0 + s * last_.h, PointS3(cp.z1, cp.z2), lift_at(s, 0), lift_at(s, 1)};
    }

private:
    double step_increment(const OdeStepRecord& r, int which) const {
        const Vec4 y0 = r.dense(0.0), ym = r.dense(0.5), y1 = r.dense(1.0);
        if (std::min({detail::radius_of(y0, which), detail::radius_of(ym, which),
                      detail::radius_of(y1, which)}) < 1e-12)
            return 0.0;
        const double a0 = detail::angle_of(y0, which);
        const double am = detail::angle_of(ym, which);
        const double a1 = detail::angle_of(y1, which);
        return detail::wrap_pi(am - a0) + detail::wrap_pi(a1 - am);
    }

    double lift_at(double s, int which) const {
        const double before = which == 0 ? th1_before_ : th2_before_;
        const Vec4 y0 = last_.dense(0.0);
        const Vec4 ys = last_.dense(s);
        if (std::min(detail::radius_of(y0, which), detail::radius_of(ys, which)) < 1e-12)
            return before;
        const double a0 = detail::angle_of(y0, which);
        if (s <= 0.5) return before + detail::wrap_pi(detail::angle_of(ys, which) - a0);
        const double am = detail::angle_of(last_.dense(0.5), which);
        return before + detail::wrap_pi(am - a0) + detail::wrap_pi(detail::angle_of(ys, which) - am);
    }

    Dopri5<detail::KernelRhs> ode_;
    double th1_, th2_;
    double th1_before_ = 0.0, th2_before_ = 0.0;
    OdeStepRecord last_{};
    double max_renorm_ = 0.0;
};

struct TraceSample {
    double t;
    PointS3 p;
    double theta1_lift;
    double theta2_lift;
};

/// Time-stamped kernel-flow trajectory with continuous Hopf-angle lifts.
struct LeafTrace {
    std::vector<TraceSample> samples;
    FoliationSpec spec;
    double ode_tol;
    double max_renorm = 0.0;
};

namespace detail {

inline void check_ode_tol(double ode_tol) {
    if (!(ode_tol >= 1e-12 && ode_tol <= 1e-6))
        throw std::invalid_argument("trace: ode_tol outside [1e-12, 1e-6]");
}

} // namespace detail

inline LeafTrace trace_leaf(const FoliationSpec& spec, const PointS3& p0, double t_max,
                            double ode_tol, int direction = 1) {
    detail::check_ode_tol(ode_tol);
    FlowTracker fl(spec, p0, ode_tol, direction);
    LeafTrace tr{{}, spec, ode_tol};
    auto s = fl.current();
    tr.samples.push_back({s.t, s.p, s.theta1_lift, s.theta2_lift});
    std::size_t guard = 0;
    while (s.t < t_max) {
        s = fl.advance();
        tr.samples.push_back({s.t, s.p, s.theta1_lift, s.theta2_lift});
        if (++guard > 2000000) throw numerical_error("trace_leaf: step budget exhausted");
    }
    tr.max_renorm = fl.max_renorm();
    return tr;
}

/// Trace until either angle lift has moved by `advance` from its start
/// value; t_max is a safety horizon.
inline LeafTrace trace_until_lift(const FoliationSpec& spec, const PointS3& p0, double advance,
                                  double t_max, double ode_tol, int direction = 1) {
    detail::check_ode_tol(ode_tol);
    FlowTracker fl(spec, p0, ode_tol, direction);
    LeafTrace tr{{}, spec, ode_tol};
    auto s = fl.current();
    const double t10 = s.theta1_lift, t20 = s.theta2_lift;
    tr.samples.push_back({s.t, s.p, s.theta1_lift, s.theta2_lift});
    std::size_t guard = 0;
    while (std::max(std::abs(s.theta1_lift - t10), std::abs(s.theta2_lift - t20)) < advance) {
        if (s.t > t_max)
            throw numerical_error("trace_until_lift: t_max exceeded before requested lift advance");
        s = fl.advance();
        tr.samples.push_back({s.t, s.p, s.theta1_lift, s.theta2_lift});
        if (++guard > 2000000) throw numerical_error("trace_until_lift: step budget exhausted");
    }
    tr.max_renorm = fl.max_renorm();
    return tr;
}

// ---------------------------------------------------------------------------
// First integrals labelling leaves.
// ---------------------------------------------------------------------------

/// Constants of a parametric leaf: with u + iv = (1-a)/a,
///   l0     = log r2 - u log r1 + v theta1,
///   theta0 = theta2 - u theta1 - v log r1  (mod 2 pi).
struct ParametricConstants {
    double l0;
    double theta0;
    double u;
    double v;
};

/// Constants of a discrete leaf: with (x, y) = z1 / z2^n,
///   c1 = -(x - lambda log r2),   c2 = lambda theta2 - y  (mod 2 pi).
/// For lambda = 1 these are the real and imaginary labels of the complex
/// leaf equation log z2 - z1/z2^n = const.
struct DiscreteConstants {
    double c1;
    double c2;
};

using LeafConstants = std::variant<ParametricConstants, DiscreteConstants>;

inline cplx uv_parameter(cplx a) { return (1.0 - a) / a; }

inline LeafConstants leaf_constants(const FoliationSpec& spec, const PointS3& p) {
    if (spec.is_parametric()) {
        if (p.r1() < 1e-12 || p.r2() < 1e-12)
            throw std::invalid_argument("leaf_constants: point on a Hopf circle");
        const cplx uvc = uv_parameter(spec.a());
        const double u = uvc.real(), v = uvc.imag();
        const double th1 = p.theta1(), th2 = p.theta2();
        const double l0 = std::log(p.r2()) - u * std::log(p.r1()) + v * th1;
        const double theta0 = detail::wrap_2pi(th2 - u * th1 - v * std::log(p.r1()));
        return ParametricConstants{l0, theta0, u, v};
    }
    if (p.r2() < 1e-12) throw std::invalid_argument("leaf_constants: point on S^1 x {0}");
    const int n = spec.n();
    const double lambda = spec.lambda();
    const cplx xy = p.z1() / pow_int(p.z2(), n);
    const double c1 = -(xy.real() - lambda * std::log(p.r2()));
    const double c2 = detail::wrap_2pi(lambda * p.theta2() - xy.imag());
    return DiscreteConstants{c1, c2};
}

/// Maximum deviation of the leaf constants from their initial values
/// along the trace; angle-valued constants are compared through the
/// continuous lifts, so no modular reduction is involved.
inline double conserved_drift(const LeafTrace& tr) {
    if (tr.samples.size() < 2) return 0.0;
    double drift = 0.0;
    if (tr.spec.is_parametric()) {
        const cplx uvc = uv_parameter(tr.spec.a());
        const double u = uvc.real(), v = uvc.imag();
        double l0_ref = 0.0, th0_ref = 0.0;
        bool first = true;
        for (const auto& s : tr.samples) {
            if (s.p.r1() < 1e-12 || s.p.r2() < 1e-12)
                throw std::invalid_argument("conserved_drift: trace touches a Hopf circle");
            const double lr1 = std::log(s.p.r1());
            const double l0 = std::log(s.p.r2()) - u * lr1 + v * s.theta1_lift;
            const double th0 = s.theta2_lift - u * s.theta1_lift - v * lr1;
            if (first) {
                l0_ref = l0;
                th0_ref = th0;
                first = false;
            }
            drift = std::max({drift, std::abs(l0 - l0_ref), std::abs(th0 - th0_ref)});
        }
        return drift;
    }
    const int n = tr.spec.n();
    const double lambda = tr.spec.lambda();
    double c1_ref = 0.0, c2_ref = 0.0;
    bool first = true;
    for (const auto& s : tr.samples) {
        if (s.p.r2() < 1e-12)
            throw std::invalid_argument("conserved_drift: trace touches S^1 x {0}");
        const cplx xy = s.p.z1() / pow_int(s.p.z2(), n);
        const double c1 = -(xy.real() - lambda * std::log(s.p.r2()));
        const double c2 = lambda * s.theta2_lift - xy.imag();
        if (first) {
            c1_ref = c1;
            c2_ref = c2;
            first = false;
        }
        drift = std::max({drift, std::abs(c1 - c1_ref), std::abs(c2 - c2_ref)});
    }
    return drift;
}

// ---------------------------------------------------------------------------
// Asymptotic trichotomy and constant-slope verification.
// ---------------------------------------------------------------------------

enum class AsymptoticClass { u_zero, u_pos, u_neg };

/// Sign class of u = Re((1-a)/a): u = 0 iff |a - 1/2| = 1/2, u > 0 iff
/// |a - 1/2| < 1/2, u < 0 iff |a - 1/2| > 1/2.
struct AsymptoticCase {
    AsymptoticClass cls;
    double u;
    double v;
};

inline AsymptoticCase asymptotic_case(cplx a) {
    if (!in_parameter_domain(a))
        throw std::invalid_argument("asymptotic_case: a outside parameter domain");
    const cplx uvc = uv_parameter(a);
    const double d = std::abs(a - cplx{0.5, 0.0}) - 0.5;
    AsymptoticClass cls;
    if (std::abs(d) <= 1e-12)
        cls = AsymptoticClass::u_zero;
    else
        cls = d < 0.0 ? AsymptoticClass::u_pos : AsymptoticClass::u_neg;
    return {cls, uvc.real(), uvc.imag()};
}

struct SlopeCheck {
    double torus_drift;
    double slope;
};

/// For real a the leaves live on Hopf tori with constant slope a/(1-a)
/// (theta1 advance per theta2 advance). Returns the maximal r1 drift and
/// the least-squares slope of theta1 against theta2.
inline SlopeCheck slope_check(double a, const LeafTrace& tr) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("slope_check: a must lie in (0,1)");
    if (tr.samples.size() < 3) throw std::invalid_argument("slope_check: trace too short");
    const double span = std::abs(tr.samples.back().theta1_lift - tr.samples.front().theta1_lift);
    if (span < 2.0 * pi) throw std::invalid_argument("slope_check: trace spans less than 2 pi in theta1");
    const double r1_0 = tr.samples.front().p.r1();
    double drift = 0.0, m1 = 0.0, m2 = 0.0;
    for (const auto& s : tr.samples) {
        drift = std::max(drift, std::abs(s.p.r1() - r1_0));
        m1 += s.theta1_lift;
        m2 += s.theta2_lift;
    }
    const double nInv = 1.0 / static_cast<double>(tr.samples.size());
    m1 *= nInv;
    m2 *= nInv;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& s : tr.samples) {
        sxy += (s.theta2_lift - m2) * (s.theta1_lift - m1);
        sxx += (s.theta2_lift - m2) * (s.theta2_lift - m2);
    }
    return {drift, sxy / sxx};
}

} // namespace s3fol
