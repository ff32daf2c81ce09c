#pragma once

#include "s3fol/fields.hpp"

#include <optional>
#include <variant>

namespace s3fol {

/// Parametric family member: omega = a z1 dz2 - (1-a) z2 dz1 with
/// a in P = (C \ R) union (0,1).
struct Parametric {
    cplx a;
};

/// Discrete family member: omega = n z1 dz2 - z2 dz1 + lambda z2^n dz2,
/// n >= 1, homotopy parameter lambda in [0,1] (lambda = 1 is the model;
/// all lambda in (0,1] give equivalent structures, lambda = 0 degenerates
/// to the parametric form with a = n/(n+1)).
struct Discrete {
    int n = 1;
    double lambda = 1.0;
};

/// True iff the pair (alpha, beta) lies in the Poincare domain: both
/// nonzero and alpha/beta off the closed negative real ray.
inline bool poincare_domain(cplx alpha, cplx beta) {
    if (alpha == cplx{0.0, 0.0} || beta == cplx{0.0, 0.0}) return false;
    const cplx r = alpha / beta;
    return !(r.imag() == 0.0 && r.real() <= 0.0);
}

/// Membership in the normalized parameter set P = (C \ R) union (0,1).
inline bool in_parameter_domain(cplx a) {
    if (a.imag() != 0.0) return true;
    return a.real() > 0.0 && a.real() < 1.0;
}

/// The parametric pair defines a taut contact circle iff 0 < Re(a) < 1.
inline bool is_contact_circle(cplx a) {
    if (!in_parameter_domain(a)) throw std::invalid_argument("is_contact_circle: a outside parameter domain");
    return a.real() > 0.0 && a.real() < 1.0;
}

/// Moduli datum of a foliation: either Parametric{a} or Discrete{n, lambda}.
class FoliationSpec {
public:
    static FoliationSpec parametric(cplx a) {
        if (!in_parameter_domain(a))
            throw std::invalid_argument("FoliationSpec: a must lie in (C \\ R) union (0,1)");
        return FoliationSpec(Parametric{a});
    }

    static FoliationSpec discrete(int n, double lambda = 1.0) {
        if (n < 1) throw std::invalid_argument("FoliationSpec: n must be >= 1");
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::invalid_argument("FoliationSpec: lambda must lie in [0,1]");
        return FoliationSpec(Discrete{n, lambda});
    }

    bool is_parametric() const { return std::holds_alternative<Parametric>(v_); }
    bool is_discrete() const { return std::holds_alternative<Discrete>(v_); }

    cplx a() const { return std::get<Parametric>(v_).a; }
    int n() const { return std::get<Discrete>(v_).n; }
    double lambda() const { return std::get<Discrete>(v_).lambda; }

private:
    explicit FoliationSpec(Parametric p) : v_(p) {}
    explicit FoliationSpec(Discrete d) : v_(d) {}

    std::variant<Parametric, Discrete> v_;
};

/// The defining complex 1-form of the family at an ambient point.
inline FormValue omega(const FoliationSpec& s, const CPoint& p) {
    if (s.is_parametric()) {
        const cplx a = s.a();
        return (a * p.z1) * dz2() - ((1.0 - a) * p.z2) * dz1();
    }
    const int n = s.n();
    const cplx zn = pow_int(p.z2, n);
    return (static_cast<double>(n) * p.z1 + s.lambda() * zn) * dz2() - p.z2 * dz1();
}

/// d(omega): dz1 ^ dz2 for the parametric family, (n+1) dz1 ^ dz2 for the
/// discrete one, independent of the base point and of lambda.
inline FormValue omega_d(const FoliationSpec& s) {
    const double c = s.is_parametric() ? 1.0 : static_cast<double>(s.n() + 1);
    return c * wedge(dz1(), dz2());
}

inline FormField omega_field(const FoliationSpec& s) {
    return FormField{1, [s](const CPoint& p) { return omega(s, p); },
                     [s](const CPoint&) { return omega_d(s); }};
}

// ---------------------------------------------------------------------------
// Pointwise residuals. Each takes any 1-form field, so that perturbed
// (non-integrable) fields built in tests run through the same code path.
// ---------------------------------------------------------------------------

/// |omega ^ d omega| at p; identically zero for formally integrable forms.
inline double integrability_residual(const FormField& w, const CPoint& p) {
    return coeff_norm(wedge(w.value(p), w.d(p)));
}

inline double integrability_residual(const FoliationSpec& s, const CPoint& p) {
    return integrability_residual(omega_field(s), p);
}

/// Norms of omega1 ^ d omega1 - omega2 ^ d omega2 and
/// omega1 ^ d omega2 + omega2 ^ d omega1 at p.
inline std::pair<double, double> c4_residuals(const FormField& w, const CPoint& p) {
    const FormValue om = w.value(p);
    const FormValue dm = w.d(p);
    const FormValue o1 = real_part(om), o2 = imag_part(om);
    const FormValue d1 = real_part(dm), d2 = imag_part(dm);
    return {coeff_norm(wedge(o1, d1) - wedge(o2, d2)),
            coeff_norm(wedge(o1, d2) + wedge(o2, d1))};
}

inline std::pair<double, double> c4_residuals(const FoliationSpec& s, const CPoint& p) {
    return c4_residuals(omega_field(s), p);
}

/// |Im(omega ^ d conj(omega))| restricted to TS^3 at p (the Cartan
/// condition is an identity of top forms on the 3-sphere, not of ambient
/// 3-forms); zero exactly for the parametric family with a in (0,1).
inline double cartan_residual(const FormField& w, const PointS3& p) {
    const FormValue om = w.value(p);
    const FormValue dbar = conj_coefficients(w.d(p));
    const FormValue three = wedge(om, dbar);
    const auto fr = tangent_frame(p);
    const Vec4 frame[3] = {fr[0], fr[1], fr[2]};
    return std::abs(eval(three, std::span<const Vec4>(frame, 3)).imag());
}

inline double cartan_residual(const FoliationSpec& s, const PointS3& p) {
    return cartan_residual(omega_field(s), p);
}

// ---------------------------------------------------------------------------
// Common kernel field and its Lie multiplier.
// ---------------------------------------------------------------------------

/// Value of a holomorphic vector field v1 d/dz1 + v2 d/dz2.
struct HoloVec {
    cplx v1, v2;
};

/// The holomorphic field X spanning ker(omega) as a complex line field.
inline HoloVec holomorphic_kernel(const FoliationSpec& s, const CPoint& p) {
    if (s.is_parametric()) return {s.a() * p.z1, (1.0 - s.a()) * p.z2};
    const int n = s.n();
    return {static_cast<double>(n) * p.z1 + s.lambda() * pow_int(p.z2, n), p.z2};
}

/// h = X(|z1|^2 + |z2|^2), the complex transversality function; nonzero on
/// S^3 exactly because the eigenvalue pair is in the Poincare domain.
inline cplx transversality(const FoliationSpec& s, const CPoint& p) {
    const HoloVec x = holomorphic_kernel(s, p);
    return x.v1 * std::conj(p.z1) + x.v2 * std::conj(p.z2);
}

/// The global generator Y of the common kernel foliation, normalized as
/// Y = 2 Re(i conj(h) X). This makes Y tangent to every sphere around the
/// origin, nowhere zero on S^3, annihilated by omega, and positively
/// proportional to d/d theta1 along S^1 x {0}.
inline TangentVector kernel_field(const FoliationSpec& s, const CPoint& p) {
    const HoloVec x = holomorphic_kernel(s, p);
    const cplx w = iu * std::conj(transversality(s, p));
    const cplx w1 = w * x.v1, w2 = w * x.v2;
    return {{w1.real(), w1.imag(), w2.real(), w2.imag()}, p};
}

/// Multiplier h with L_Y omega = h omega on TS^3, solved pointwise in
/// least squares over an orthonormal tangent frame; residual records how
/// well the proportionality holds (exact in theory for integrable fields).
struct KernelMultiplier {
    cplx h;
    double residual;
    bool ok;
};

inline KernelMultiplier lie_multiplier(const FormField& w, const TangentVector& y,
                                       const PointS3& p) {
    // Cartan formula: L_Y omega = Y -| d omega once omega(Y) = 0.
    const FormValue mu = contract(w.d(p), y.v);
    const FormValue om = w.value(p);
    const auto frame = tangent_frame(p);
    cplx num{0.0, 0.0};
    double den = 0.0;
    cplx mv[3], wv[3];
    for (int k = 0; k < 3; ++k) {
        const Vec4 e = frame[static_cast<std::size_t>(k)];
        mv[k] = eval(mu, std::span<const Vec4>(&e, 1));
        wv[k] = eval(om, std::span<const Vec4>(&e, 1));
        num += std::conj(wv[k]) * mv[k];
        den += std::norm(wv[k]);
    }
    const cplx h = num / den;
    double res = 0.0;
    for (int k = 0; k < 3; ++k) res += std::norm(mv[k] - h * wv[k]);
    res = std::sqrt(res);
    return {h, res, res <= 1e-6};
}

inline KernelMultiplier kernel_multiplier(const FoliationSpec& s, const PointS3& p) {
    const KernelMultiplier m = lie_multiplier(omega_field(s), kernel_field(s, p), p);
    if (!m.ok) throw numerical_error("kernel_multiplier: proportionality residual exceeds 1e-6");
    return m;
}

} // namespace s3fol
