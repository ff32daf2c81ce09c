#pragma once

#include "s3fol/sphere.hpp"

#include <functional>

namespace s3fol {

/// One accepted Dormand-Prince step with the standard 4th-order dense
/// output polynomial.
struct OdeStepRecord {
    double t0 = 0.0;
    double h = 0.0;
    Vec4 y0{}, y1{};
    Vec4 rcont3{}, rcont4{}, rcont5{};

    /// State at t0 + s*h for s in [0,1].
    Vec4 dense(double s) const {
        const double s1 = 1.0 - s;
        Vec4 out;
        for (int i = 0; i < 4; ++i) {
            const double ydiff = y1[static_cast<std::size_t>(i)] - y0[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] =
                y0[static_cast<std::size_t>(i)] +
                s * (ydiff + s1 * (rcont3[static_cast<std::size_t>(i)] +
                                   s * (rcont4[static_cast<std::size_t>(i)] +
                                        s1 * rcont5[static_cast<std::size_t>(i)])));
        }
        return out;
    }
};

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) on R^4 with FSAL
/// and dense output. The veto callback lets the caller reject an
/// error-acceptable step for its own reasons (here: angle-lift aliasing);
/// a vetoed step is retried with half the step size.
template <class RHS>
class Dopri5 {
public:
    Dopri5(RHS rhs, const Vec4& y0, double t0, double atol, double rtol)
        : rhs_(std::move(rhs)), t_(t0), y_(y0), atol_(atol), rtol_(rtol) {
        k1_ = rhs_(y_);
        h_ = initial_step();
    }

    double time() const { return t_; }
    const Vec4& state() const { return y_; }

    /// Replace the current state (used for per-step renormalization);
    /// refreshes the FSAL derivative.
    void set_state(const Vec4& y) {
        y_ = y;
        k1_ = rhs_(y_);
    }

    template <class Veto>
    const OdeStepRecord& step(const Veto& veto) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            if (!(std::abs(h_) > 1e-14 * std::max(1.0, std::abs(t_))))
                throw numerical_error("ode: step size collapse at t = " + std::to_string(t_));
            Vec4 k2, k3, k4, k5, k6, k7, y1;
            const double h = h_;
            auto stage = [&](const double* a, int na) {
                Vec4 s = y_;
                const Vec4* ks[6] = {&k1_, &k2, &k3, &k4, &k5, &k6};
                for (int j = 0; j < na; ++j)
                    if (a[j] != 0.0) s = add(s, scale(h * a[j], *ks[j]));
                return s;
            };
            static constexpr double a2[] = {0.2};
            static constexpr double a3[] = {3.0 / 40.0, 9.0 / 40.0};
            static constexpr double a4[] = {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0};
            static constexpr double a5[] = {19372.0 / 6561.0, -25360.0 / 2187.0,
                                            64448.0 / 6561.0, -212.0 / 729.0};
            static constexpr double a6[] = {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                            49.0 / 176.0, -5103.0 / 18656.0};
            static constexpr double a7[] = {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0,
                                            -2187.0 / 6784.0, 11.0 / 84.0};
            k2 = rhs_(stage(a2, 1));
            k3 = rhs_(stage(a3, 2));
            k4 = rhs_(stage(a4, 3));
            k5 = rhs_(stage(a5, 4));
            k6 = rhs_(stage(a6, 5));
            y1 = stage(a7, 6);
            k7 = rhs_(y1);

            static constexpr double e[] = {71.0 / 57600.0,  0.0,        -71.0 / 16695.0,
                                           71.0 / 1920.0,   -17253.0 / 339200.0,
                                           22.0 / 525.0,    -1.0 / 40.0};
            double err = 0.0;
            for (int i = 0; i < 4; ++i) {
                const std::size_t si = static_cast<std::size_t>(i);
                const double ei = h * (e[0] * k1_[si] + e[2] * k3[si] + e[3] * k4[si] +
                                       e[4] * k5[si] + e[5] * k6[si] + e[6] * k7[si]);
                const double sc = atol_ + rtol_ * std::max(std::abs(y_[si]), std::abs(y1[si]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / 4.0);

            if (err > 1.0) {
                h_ *= std::max(0.2, 0.9 * std::pow(err, -0.2));
                continue;
            }

            // Dense output coefficients (4th order interpolant).
            static constexpr double d1 = -12715105075.0 / 11282082432.0;
            static constexpr double d3 = 87487479700.0 / 32700410799.0;
            static constexpr double d4 = -10690763975.0 / 1880347072.0;
            static constexpr double d5 = 701980252875.0 / 199316789632.0;
            static constexpr double d6 = -1453857185.0 / 822651844.0;
            static constexpr double d7 = 69997945.0 / 29380423.0;
            rec_.t0 = t_;
            rec_.h = h;
            rec_.y0 = y_;
            rec_.y1 = y1;
            for (int i = 0; i < 4; ++i) {
                const std::size_t si = static_cast<std::size_t>(i);
                const double ydiff = y1[si] - y_[si];
                const double bspl = h * k1_[si] - ydiff;
                rec_.rcont3[si] = bspl;
                rec_.rcont4[si] = ydiff - h * k7[si] - bspl;
                rec_.rcont5[si] = h * (d1 * k1_[si] + d3 * k3[si] + d4 * k4[si] + d5 * k5[si] +
                                       d6 * k6[si] + d7 * k7[si]);
            }

            if (veto(rec_)) {
                h_ *= 0.5;
                continue;
            }

            t_ += h;
            y_ = y1;
            k1_ = k7;
            const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
            h_ = h * fac;
            return rec_;
        }
        throw numerical_error("ode: too many rejected steps at t = " + std::to_string(t_));
    }

private:
    double initial_step() const {
        const double d0 = norm(y_), d1 = norm(k1_);
        double h = (d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-4;
        return std::min(h, 0.1);
    }

    RHS rhs_;
    double t_;
    Vec4 y_;
    Vec4 k1_{};
    double atol_, rtol_;
    double h_ = 1e-3;
    OdeStepRecord rec_{};
};

} // namespace s3fol
