#pragma once

#include "s3fol/core.hpp"

#include <array>
#include <cmath>

namespace s3fol {

/// Real 4-vector in the chart (x1, y1, x2, y2) of C^2 = R^4.
using Vec4 = std::array<double, 4>;

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

inline Vec4 add(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 sub(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec4 scale(double s, const Vec4& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

/// Ambient point of C^2. All 1-form and vector-field formulas in this
/// library are defined on C^2 \ {0}, so evaluation sites are not forced
/// onto the sphere; PointS3 below adds that constraint.
struct CPoint {
    cplx z1{0.0, 0.0};
    cplx z2{0.0, 0.0};

    Vec4 coords() const { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }

    static CPoint from_coords(const Vec4& c) { return {cplx{c[0], c[1]}, cplx{c[2], c[3]}}; }

    double norm_sq() const { return std::norm(z1) + std::norm(z2); }
};

/// Point (z1, z2) of C^2 constrained to the unit sphere
/// |z1|^2 + |z2|^2 = 1. The constructor renormalizes, so the constraint
/// holds to a couple of ulps after construction; inputs that are far from
/// the sphere are rejected as a programming error.
class PointS3 {
public:
    PointS3() : z1_(1.0, 0.0), z2_(0.0, 0.0) {}

    PointS3(cplx z1, cplx z2) : z1_(z1), z2_(z2) {
        const double n2 = std::norm(z1_) + std::norm(z2_);
        if (!(n2 > 0.0) || std::abs(n2 - 1.0) > 1e-6)
            throw std::invalid_argument("PointS3: input is not near the unit sphere");
        const double inv = 1.0 / std::sqrt(n2);
        z1_ *= inv;
        z2_ *= inv;
    }

    cplx z1() const { return z1_; }
    cplx z2() const { return z2_; }

    double x1() const { return z1_.real(); }
    double y1() const { return z1_.imag(); }
    double x2() const { return z2_.real(); }
    double y2() const { return z2_.imag(); }

    double r1() const { return std::abs(z1_); }
    double r2() const { return std::abs(z2_); }
    double theta1() const { return std::atan2(z1_.imag(), z1_.real()); }
    double theta2() const { return std::atan2(z2_.imag(), z2_.real()); }

    Vec4 coords() const { return {x1(), y1(), x2(), y2()}; }

    operator CPoint() const { return {z1_, z2_}; }

private:
    cplx z1_, z2_;
};

/// Chart point (cos(eta) e^{i theta1}, sin(eta) e^{i theta2}); covers the
/// sphere up to the measure-zero locus eta in {0, pi/2} where one of the
/// angles degenerates.
inline PointS3 hopf_point(double eta, double theta1, double theta2) {
    if (!(eta >= -1e-12 && eta <= pi / 2 + 1e-12))
        throw std::invalid_argument("hopf_point: eta outside [0, pi/2]");
    return PointS3(std::polar(std::cos(eta), theta1), std::polar(std::sin(eta), theta2));
}

/// Tangent vector of R^4 attached to a base point. Tangency to S^3 is a
/// property some operations require, not an invariant of the type; use
/// is_tangent() to check it.
struct TangentVector {
    Vec4 v{0.0, 0.0, 0.0, 0.0};
    CPoint base;

    cplx v1() const { return {v[0], v[1]}; }
    cplx v2() const { return {v[2], v[3]}; }

    bool is_tangent(double tol = 1e-12) const {
        const Vec4 b = base.coords();
        const double nb = norm(b);
        return nb > 0.0 && std::abs(dot(v, b)) / nb <= tol * std::max(1.0, norm(v));
    }
};

/// Remove the radial component of v at p.
inline TangentVector tangent_projection(const PointS3& p, const TangentVector& v) {
    const Vec4 n = p.coords();
    const double c = dot(v.v, n);
    return {sub(v.v, scale(c, n)), p};
}

/// Global orthonormal frame of TS^3 from the quaternionic structure of
/// R^4; at off-sphere points the frame is orthogonal with norm |p|.
inline std::array<Vec4, 3> tangent_frame(const CPoint& p) {
    const double x1 = p.z1.real(), y1 = p.z1.imag();
    const double x2 = p.z2.real(), y2 = p.z2.imag();
    return {Vec4{-y1, x1, -y2, x2},
            Vec4{-x2, y2, x1, -y1},
            Vec4{-y2, -x2, y1, x1}};
}

inline PointS3 random_point(Rng& rng) {
    while (true) {
        const cplx z1{rng.gaussian(), rng.gaussian()};
        const cplx z2{rng.gaussian(), rng.gaussian()};
        const double n = std::sqrt(std::norm(z1) + std::norm(z2));
        if (n > 1e-6) return PointS3(z1 / n, z2 / n);
    }
}

inline TangentVector random_tangent(Rng& rng, const PointS3& p) {
    const TangentVector raw{{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()},
                            p};
    return tangent_projection(p, raw);
}

} // namespace s3fol
