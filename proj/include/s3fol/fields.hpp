#pragma once

#include "s3fol/forms.hpp"

#include <functional>

namespace s3fol {

/// A field of exterior forms on (a neighbourhood of) S^3 in the ambient
/// R^4 chart. When a closed-form exterior derivative is known it is
/// supplied in analytic_d; otherwise d() falls back to central
/// differences of the coefficient functions.
struct FormField {
    int degree = 1;
    std::function<FormValue(const CPoint&)> value;
    std::function<FormValue(const CPoint&)> analytic_d; // may be empty

    FormValue operator()(const CPoint& p) const { return value(p); }

    FormValue d(const CPoint& p, double step = 1e-5) const;
};

/// Central-difference exterior derivative in the flat R^4 chart,
/// truncation error O(step^2) for analytic coefficient functions.
inline FormValue numeric_d(const FormField& f, const CPoint& p, double step) {
    if (!(step > 0.0 && step <= 1e-2)) throw std::invalid_argument("numeric_d: step outside (0, 1e-2]");
    if (f.degree >= 4) throw std::invalid_argument("numeric_d: derivative of a 4-form");
    FormValue out(f.degree + 1);
    const Vec4 c = p.coords();
    for (int axis = 0; axis < 4; ++axis) {
        Vec4 cp = c, cm = c;
        cp[static_cast<std::size_t>(axis)] += step;
        cm[static_cast<std::size_t>(axis)] -= step;
        FormValue diff = f.value(CPoint::from_coords(cp)) - f.value(CPoint::from_coords(cm));
        diff *= cplx{1.0 / (2.0 * step), 0.0};
        out += wedge(dx_form(axis), diff);
    }
    return out;
}

inline FormValue FormField::d(const CPoint& p, double step) const {
    return analytic_d ? analytic_d(p) : numeric_d(*this, p, step);
}

} // namespace s3fol
