#pragma once

#include "s3fol/section.hpp"

#include <array>

namespace s3fol {

enum class ClosedLeaf { hopf_circle_1, hopf_circle_2 };

/// Closed-form logarithmic monodromy of the closed leaves:
/// parametric, S^1 x {0}: 2 pi i (1-a)/a; parametric, {0} x S^1:
/// 2 pi i a/(1-a); discrete, S^1 x {0}: 2 pi i / n. {0} x S^1 is not a
/// leaf of the discrete foliations.
inline cplx monodromy_closed_form(const FoliationSpec& s, ClosedLeaf leaf) {
    if (s.is_parametric()) {
        const cplx a = s.a();
        return leaf == ClosedLeaf::hopf_circle_1 ? 2.0 * pi * iu * (1.0 - a) / a
                                                 : 2.0 * pi * iu * a / (1.0 - a);
    }
    if (leaf == ClosedLeaf::hopf_circle_2)
        throw std::invalid_argument("monodromy_closed_form: {0} x S^1 is not a closed leaf of F_n");
    return 2.0 * pi * iu / static_cast<double>(s.n());
}

enum class MonodromyMethod { closed_form, numeric };

struct MonodromyResult {
    cplx log_monodromy;
    ClosedLeaf leaf;
    double z0;
    MonodromyMethod method;
};

namespace detail {

// Averaged continuous log of the measured return derivative at transverse
// radius r: four seeds at the 4th roots of unity cancel every error term
// except those even in |z|, so the average is log phi'(0) + O(r^2).
inline cplx monodromy_log_at_radius(const FoliationSpec& s, int leaf, double r, double ode_tol) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        const cplx z = std::polar(r, 0.5 * pi * k);
        const SectionReturn ret = section_return(s, leaf, z, ode_tol, 0.95);
        acc += cplx{ret.log_mod_change, ret.arg_advance};
    }
    return 0.25 * acc;
}

} // namespace detail

/// Numeric logarithmic monodromy: finite transverse radii, imaginary part
/// tracked as an accumulated winding (never a principal value), one
/// Richardson step in z0^2 over the radii {z0, z0/2}. A cheap probe
/// trajectory measures the modulus growth per loop first; the requested
/// z0 is shrunk when the return would otherwise leave the chart disc.
inline MonodromyResult monodromy_numeric(const FoliationSpec& s, ClosedLeaf leaf, double z0,
                                         double ode_tol) {
    if (!(z0 >= 1e-4 && z0 <= 1e-1))
        throw std::invalid_argument("monodromy_numeric: z0 outside [1e-4, 1e-1]");
    detail::check_ode_tol(ode_tol);
    if (s.is_discrete() && leaf == ClosedLeaf::hopf_circle_2)
        throw std::invalid_argument("monodromy_numeric: {0} x S^1 is not a closed leaf of F_n");
    const int leaf_idx = leaf == ClosedLeaf::hopf_circle_1 ? 1 : 2;
    double growth = 1.0;
    for (double rp = 1e-3; rp >= 1e-6; rp *= 0.1) {
        try {
            growth =
                std::exp(detail::section_return(s, leaf_idx, cplx{rp, 0.0}, 1e-8, 0.95).log_mod_change);
            break;
        } catch (const numerical_error&) {
            // probe expanded out of the chart; retry closer to the circle
        }
    }
    // Keep the return radius near 0.05 so the residual error after the
    // r^2 Richardson step (which scales like the 4th power of the return
    // radius) stays below 1e-5.
    double r0 = z0;
    if (growth > 1.0) r0 = std::min(r0, 0.05 / growth);
    r0 = std::max(r0, 1e-6);
    const cplx m1 = detail::monodromy_log_at_radius(s, leaf_idx, r0, ode_tol);
    const cplx m2 = detail::monodromy_log_at_radius(s, leaf_idx, 0.5 * r0, ode_tol);
    // Error even in the radius: eliminate the r^2 term.
    const cplx m = (4.0 * m2 - m1) / 3.0;
    return {m, leaf, r0, MonodromyMethod::numeric};
}

} // namespace s3fol
