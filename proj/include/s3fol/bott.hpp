#pragma once

#include "s3fol/foliation.hpp"
#include "s3fol/quadrature.hpp"

#include <optional>
#include <vector>

namespace s3fol {

/// Closed-form Bott invariant: -4 pi^2 / (a(1-a)) for the parametric
/// family, -4 pi^2 (n+1)^2 / n for the discrete one (any lambda).
inline cplx bott_closed_form(const FoliationSpec& s) {
    const double c = -4.0 * pi * pi;
    if (s.is_parametric()) {
        const cplx a = s.a();
        return c / (a * (1.0 - a));
    }
    const double n = static_cast<double>(s.n());
    return cplx{c * (n + 1.0) * (n + 1.0) / n, 0.0};
}

/// The 1-form alpha with d omega = alpha ^ omega for the parametric
/// family, in the closed form
///   alpha = ((1/a) zbar1 dz1 + (1/(1-a)) zbar2 dz2) / |z|^2.
inline FormValue analytic_alpha(const FoliationSpec& s, const CPoint& p) {
    if (!s.is_parametric()) throw std::invalid_argument("analytic_alpha: parametric specs only");
    const cplx a = s.a();
    const double r2 = p.norm_sq();
    return (1.0 / r2) * (std::conj(p.z1) / a * dz1() + std::conj(p.z2) / (1.0 - a) * dz2());
}

/// d(analytic_alpha), exact: with rho = 1/|z|^2 and
/// beta = (1/a) zbar1 dz1 + (1/(1-a)) zbar2 dz2,
/// d(rho beta) = d rho ^ beta + rho d beta.
inline FormValue analytic_alpha_d(const FoliationSpec& s, const CPoint& p) {
    const cplx a = s.a();
    const double r2 = p.norm_sq();
    const FormValue beta = std::conj(p.z1) / a * dz1() + std::conj(p.z2) / (1.0 - a) * dz2();
    FormValue dr2(1); // d(|z|^2) = 2(x1 dx1 + y1 dy1 + x2 dx2 + y2 dy2)
    const Vec4 c = p.coords();
    for (int i = 0; i < 4; ++i) dr2[i] = 2.0 * c[static_cast<std::size_t>(i)];
    const FormValue dbeta = (1.0 / a) * wedge(dzbar1(), dz1()) + (1.0 / (1.0 - a)) * wedge(dzbar2(), dz2());
    return (-1.0 / (r2 * r2)) * wedge(dr2, beta) + (1.0 / r2) * dbeta;
}

inline FormField analytic_alpha_field(const FoliationSpec& s) {
    if (!s.is_parametric()) throw std::invalid_argument("analytic_alpha_field: parametric specs only");
    return FormField{1, [s](const CPoint& p) { return analytic_alpha(s, p); },
                     [s](const CPoint& p) { return analytic_alpha_d(s, p); }};
}

/// Minimal-norm field V tangent to the sphere through p with
/// omega(V) = 1; smooth because omega restricted to the tangent space is
/// nowhere zero.
inline Vec4 omega_unit_dual(const FoliationSpec& s, const CPoint& p) {
    const FormValue om = omega(s, p);
    const auto frame = tangent_frame(p);
    double re[3], im[3];
    for (int k = 0; k < 3; ++k) {
        const Vec4 e = frame[static_cast<std::size_t>(k)];
        const cplx w = eval(om, std::span<const Vec4>(&e, 1));
        re[k] = w.real();
        im[k] = w.imag();
    }
    // Minimal-norm coefficients c with sum c_k Re(w_k) = 1, sum c_k Im(w_k) = 0.
    const double g11 = re[0] * re[0] + re[1] * re[1] + re[2] * re[2];
    const double g12 = re[0] * im[0] + re[1] * im[1] + re[2] * im[2];
    const double g22 = im[0] * im[0] + im[1] * im[1] + im[2] * im[2];
    const double det = g11 * g22 - g12 * g12;
    if (!(det > 1e-30))
        throw numerical_error("omega_unit_dual: omega degenerates on the tangent space");
    const double l1 = g22 / det, l2 = -g12 / det;
    Vec4 v{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        const double ck = re[k] * l1 + im[k] * l2;
        v = add(v, scale(ck, frame[static_cast<std::size_t>(k)]));
    }
    return v;
}

/// Family-independent alpha: with V = omega_unit_dual, set
/// alpha = -V -| d omega. This satisfies d omega = alpha ^ omega on TS^3
/// because omega ^ d omega vanishes identically.
inline FormValue generic_alpha(const FoliationSpec& s, const CPoint& p) {
    return -contract(omega_d(s), omega_unit_dual(s, p));
}

inline FormField generic_alpha_field(const FoliationSpec& s) {
    return FormField{1, [s](const CPoint& p) { return generic_alpha(s, p); }, nullptr};
}

enum class AlphaSource { analytic, generic };
enum class BottMethod { closed_form, quadrature_analytic_alpha, quadrature_generic_alpha };

struct BottResult {
    cplx value;
    BottMethod method;
    S3Grid grid;
    double error_estimate;
};

namespace detail {

inline cplx bott_integral(const FoliationSpec& s, const S3Grid& g, AlphaSource src, int threads,
                          double fd_step) {
    const FormField alpha =
        src == AlphaSource::analytic ? analytic_alpha_field(s) : generic_alpha_field(s);
    const cplx val = integrate_chart(
        [&](const ChartFrame& f) {
            const FormValue al = alpha.value(f.p);
            const FormValue dal = alpha.d(f.p, fd_step);
            const FormValue w = wedge(al, dal);
            const Vec4 frame[3] = {f.d_eta, f.d_theta2, f.d_theta1};
            return eval(w, std::span<const Vec4>(frame, 3));
        },
        g, threads);
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
        throw numerical_error("bott_quadrature: non-finite integrand");
    return val;
}

} // namespace detail

/// Quadrature of the Bott integrand alpha ^ d alpha over S^3. The error
/// estimate is the change against a half-resolution grid plus a floating
/// point floor.
inline BottResult bott_quadrature(const FoliationSpec& s, const S3Grid& g,
                                  AlphaSource src = AlphaSource::analytic, int threads = 1,
                                  double fd_step = 1e-5) {
    if (g.n_eta < 8 || g.n_theta1 < 8 || g.n_theta2 < 8)
        throw std::invalid_argument("bott_quadrature: grid sizes must be >= 8");
    if (src == AlphaSource::analytic && !s.is_parametric())
        throw std::invalid_argument("bott_quadrature: analytic alpha requires a parametric spec");
    const cplx fine = detail::bott_integral(s, g, src, threads, fd_step);
    const S3Grid half{std::max(8, g.n_eta / 2), std::max(8, g.n_theta1 / 2),
                      std::max(8, g.n_theta2 / 2)};
    const cplx coarse = detail::bott_integral(s, half, src, threads, fd_step);
    const double est = std::abs(fine - coarse) + 1e-13 * (1.0 + std::abs(fine));
    return {fine, src == AlphaSource::analytic ? BottMethod::quadrature_analytic_alpha
                                               : BottMethod::quadrature_generic_alpha,
            g, est};
}

/// Bott values along the homotopy omega_n^lambda; constant in exact
/// arithmetic, so successive jumps are a direct quadrature diagnostic.
inline std::vector<BottResult> bott_homotopy_scan(int n, const std::vector<double>& lambdas,
                                                  const S3Grid& g, int threads = 1,
                                                  double fd_step = 1e-5) {
    if (lambdas.size() < 2 || lambdas.front() != 0.0 || lambdas.back() != 1.0)
        throw std::invalid_argument("bott_homotopy_scan: lambdas must be sorted and include 0 and 1");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1]))
            throw std::invalid_argument("bott_homotopy_scan: lambdas must be strictly increasing");
    std::vector<BottResult> out;
    out.reserve(lambdas.size());
    for (const double l : lambdas)
        out.push_back(bott_quadrature(FoliationSpec::discrete(n, l), g, AlphaSource::generic,
                                      threads, fd_step));
    return out;
}

/// Moduli data recoverable from a Bott value: the unordered parameter
/// pair {a, 1-a} when -4 pi^2 / bott avoids the closed negative real ray,
/// plus the discrete candidate n when bott matches -4 pi^2 (n+1)^2 / n.
/// The ambiguity between the two families is inherent; it is resolved by
/// dynamics (number of closed leaves), not by the Bott value.
struct Recovery {
    std::optional<std::pair<cplx, cplx>> parametric_pair;
    std::optional<int> discrete_n;
};

inline Recovery recover_parameter(cplx bott) {
    Recovery out;
    if (bott == cplx{0.0, 0.0}) return out;
    const cplx s = -4.0 * pi * pi / bott;
    if (!(s.imag() == 0.0 && s.real() <= 0.0)) {
        const cplx b = std::sqrt(0.25 - s);
        out.parametric_pair = std::make_pair(0.5 + b, 0.5 - b);
    }
    // Discrete match: bott = -4 pi^2 (n+1)^2 / n for an integer n >= 1.
    if (std::abs(bott.imag()) <= 1e-9 * std::abs(bott) && bott.real() < 0.0) {
        const double B = bott.real() / (-4.0 * pi * pi); // (n+1)^2 / n >= 4
        if (B >= 4.0 - 1e-9) {
            const double disc = std::sqrt(std::max(0.0, (B - 2.0) * (B - 2.0) - 4.0));
            for (const double root : {(B - 2.0 + disc) / 2.0, (B - 2.0 - disc) / 2.0}) {
                const double rn = std::round(root);
                if (rn < 1.0) continue;
                const double expect = -4.0 * pi * pi * (rn + 1.0) * (rn + 1.0) / rn;
                if (std::abs(bott.real() - expect) <= 1e-9 * std::abs(expect) &&
                    std::abs(bott.imag()) <= 1e-9 * std::abs(expect)) {
                    out.discrete_n = static_cast<int>(rn);
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace s3fol
