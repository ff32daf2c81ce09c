#pragma once

#include "s3fol/foliation.hpp"
#include "s3fol/implicit.hpp"

namespace s3fol {

enum class Surface { round_sphere, sigma_n };

/// Point on the round sphere or on the deformed sphere
/// Sigma_n = {n^2 |z1|^2 + |z2|^{2n} = 1}, the preimage of S^3 under the
/// branched covering (z1, z2) -> (n z1, z2^n).
struct CoverPoint {
    CPoint p;
    Surface surface = Surface::round_sphere;
    int n = 1;
};

/// Defining-function residual of Sigma_n at p.
inline double sigma_defect(int n, const CPoint& p) {
    return static_cast<double>(n) * static_cast<double>(n) * std::norm(p.z1) +
           std::pow(std::norm(p.z2), n) - 1.0;
}

/// Ambient gradient of n^2 |z1|^2 + |z2|^{2n}.
inline Vec4 sigma_gradient(int n, const CPoint& p) {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const double f = static_cast<double>(n) * std::pow(std::norm(p.z2), n - 1);
    return {2.0 * n2 * p.z1.real(), 2.0 * n2 * p.z1.imag(), 2.0 * f * p.z2.real(),
            2.0 * f * p.z2.imag()};
}

/// Project an ambient vector onto the tangent space of Sigma_n at p.
inline Vec4 sigma_tangent_project(int n, const CPoint& p, const Vec4& v) {
    const Vec4 g = sigma_gradient(n, p);
    const double gg = dot(g, g);
    return sub(v, scale(dot(v, g) / gg, g));
}

/// The n-fold branched covering p_n(z1, z2) = (n z1, z2^n); maps Sigma_n
/// onto the round sphere, branched along S^1 x {0}.
inline PointS3 branched_cover(int n, const CoverPoint& cp) {
    if (cp.surface != Surface::sigma_n || cp.n != n)
        throw std::invalid_argument("branched_cover: point must lie on Sigma_n");
    if (std::abs(sigma_defect(n, cp.p)) > 1e-8)
        throw std::invalid_argument("branched_cover: point violates the Sigma_n equation");
    return PointS3(static_cast<double>(n) * cp.p.z1, pow_int(cp.p.z2, n));
}

/// Unique real root of
///   n^2 e^{2 n zeta} |z1 + zeta z2^n|^2 + e^{2 n zeta} |z2|^{2n} = 1;
/// the left-hand side is strictly increasing with limits 0 and infinity,
/// so a geometrically expanded bracket plus safeguarded Newton always
/// converges.
inline double solve_zeta(int n, const PointS3& p, double tol = 1e-14,
                         std::vector<double>* residual_trace = nullptr) {
    if (n < 1) throw std::invalid_argument("solve_zeta: n must be >= 1");
    if (!(tol >= 1e-15)) throw std::invalid_argument("solve_zeta: tol must be >= 1e-15");
    const cplx zn = pow_int(p.z2(), n);
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const double z2n2 = std::pow(std::norm(p.z2()), n);
    auto f_df = [&](double zeta) {
        const double e = std::exp(2.0 * n * zeta);
        const cplx A = p.z1() + zeta * zn;
        const double f = n2 * e * std::norm(A) + e * z2n2 - 1.0;
        const double df = 2.0 * n * e * (n2 * std::norm(A) + z2n2) +
                          n2 * e * 2.0 * (std::conj(A) * zn).real();
        return std::pair<double, double>{f, df};
    };
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 200 && f_df(lo).first > 0.0; ++it) lo *= 2.0;
    for (int it = 0; it < 200 && f_df(hi).first < 0.0; ++it) hi *= 2.0;
    return newton_bracketed(f_df, lo, hi, tol, 200, residual_trace);
}

/// Leaf-preserving map Phi_n onto Sigma_n: flow the point for complex
/// time zeta(p) along the holomorphic field tangent to the leaves,
///   Psi_n^zeta(z1, z2) = (e^{n zeta}(z1 + zeta z2^n), e^{zeta} z2).
inline CoverPoint phi_n(int n, const PointS3& p, double tol = 1e-14) {
    const double zeta = solve_zeta(n, p, tol);
    const double en = std::exp(static_cast<double>(n) * zeta);
    const cplx zn = pow_int(p.z2(), n);
    return {{en * (p.z1() + zeta * zn), std::exp(zeta) * p.z2()}, Surface::sigma_n, n};
}

/// Pointwise residual of the pullback identity p_n^* omega_1 =
/// n z2^{n-1} omega_n, evaluated on one tangent vector u of Sigma_n:
/// |omega_1(d p_n(u)) - n z2^{n-1} omega_n(u)|.
inline double pullback_residual(int n, const CoverPoint& cp, const Vec4& u) {
    if (cp.surface != Surface::sigma_n || cp.n != n)
        throw std::invalid_argument("pullback_residual: point must lie on Sigma_n");
    const Vec4 g = sigma_gradient(n, cp.p);
    if (std::abs(dot(u, g)) > 1e-10 * std::max(1.0, norm(u)) * norm(g))
        throw std::invalid_argument("pullback_residual: vector is not tangent to Sigma_n");
    const cplx u1{u[0], u[1]}, u2{u[2], u[3]};
    // d p_n is complex linear: (u1, u2) -> (n u1, n z2^{n-1} u2).
    const cplx zfac = static_cast<double>(n) * pow_int(cp.p.z2, n - 1);
    const Vec4 du = {static_cast<double>(n) * u1.real(), static_cast<double>(n) * u1.imag(),
                     (zfac * u2).real(), (zfac * u2).imag()};
    const CPoint q{static_cast<double>(n) * cp.p.z1, pow_int(cp.p.z2, n)};
    const FormValue om1 = omega(FoliationSpec::discrete(1), q);
    const FormValue omn = omega(FoliationSpec::discrete(n), cp.p);
    const cplx lhs = eval(om1, std::span<const Vec4>(&du, 1));
    const cplx rhs = zfac * eval(omn, std::span<const Vec4>(&u, 1));
    return std::abs(lhs - rhs);
}

} // namespace s3fol
