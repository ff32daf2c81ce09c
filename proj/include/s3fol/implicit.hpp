#pragma once

#include "s3fol/core.hpp"

#include <utility>
#include <vector>

namespace s3fol {

/// Newton iteration safeguarded by a sign-change bracket; falls back to
/// bisection whenever the Newton step leaves the bracket or fails to
/// shrink it. f_df(x) returns {f(x), f'(x)}; convergence is on |f| <= tol.
/// residual_trace, when given, records |f| at every iterate.
template <class FDF>
double newton_bracketed(FDF&& f_df, double lo, double hi, double tol, int max_iter = 200,
                        std::vector<double>* residual_trace = nullptr) {
    auto [flo, dlo] = f_df(lo);
    auto [fhi, dhi] = f_df(hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::invalid_argument("newton_bracketed: root not bracketed");
    if (flo > 0.0) std::swap(lo, hi);
    double x = 0.5 * (lo + hi);
    double width_old = std::abs(hi - lo);
    for (int it = 0; it < max_iter; ++it) {
        auto [f, df] = f_df(x);
        if (residual_trace) residual_trace->push_back(std::abs(f));
        if (std::abs(f) <= tol) return x;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        double xn = (df != 0.0) ? x - f / df : x;
        const double a = std::min(lo, hi), b = std::max(lo, hi);
        const double width = std::abs(hi - lo);
        if (!(xn > a && xn < b) || width > 0.75 * width_old) {
            xn = 0.5 * (lo + hi);
        }
        width_old = width;
        if (xn == x) return x;
        x = xn;
    }
    throw numerical_error("newton_bracketed: no convergence");
}

/// Unique positive root of (x^2+y^2) r^{2n} + r^2 = 1; the left-hand side
/// is strictly increasing in r on (0, 1], so the root is bracketed by
/// [0, 1].
inline double solve_r2(int n, double x, double y, double tol = 1e-14) {
    if (n < 1) throw std::invalid_argument("solve_r2: n must be >= 1");
    if (!(tol >= 1e-15)) throw std::invalid_argument("solve_r2: tol must be >= 1e-15");
    const double q = x * x + y * y;
    if (q == 0.0) return 1.0;
    return newton_bracketed(
        [&](double r) {
            const double r2n = std::pow(r, 2 * n);
            return std::pair<double, double>{q * r2n + r * r - 1.0,
                                             2.0 * n * q * r2n / (r > 0.0 ? r : 1.0) + 2.0 * r};
        },
        0.0, 1.0, tol);
}

/// Straightening map sigma(z) = x - log r2(x, y) + i y; sigma(0) = 0, and
/// d sigma / dx lies in [1/2, 3/2], so horizontal lines map monotonically.
inline cplx straighten(int n, cplx z) {
    const double r2 = solve_r2(n, z.real(), z.imag());
    return {z.real() - std::log(r2), z.imag()};
}

} // namespace s3fol
