#pragma once

#include "s3fol/core.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <optional>

namespace s3fol {

/// Exact rational number on long long (the integer ranges here are tiny;
/// no overflow guard is needed beyond normalization).
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(std::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rational operator+(Rational a, Rational b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct XgcdResult {
    long long g, x, y; // g = gcd(m, n) = x*m + y*n
};

inline XgcdResult xgcd(long long m, long long n) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (n != 0) {
        const long long q = m / n;
        long long t = m - q * n;
        m = n;
        n = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    return {m, x0, y0};
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Seifert invariants of the fibration defined by the circle action
/// (z1, z2) -> (e^{i p1 t} z1, e^{i p2 t} z2) on S^3 over S^2(p1, p2):
/// unnormalised (g=0, (p1, q1'), (p2, q2')) with p1 q2' + p2 q1' = 1, and
/// normalised (g=0, b, (p1, q1), (p2, q2)) with q_j' = m_j p_j + q_j,
/// 0 <= q_j < p_j, b = m1 + m2. The unnormalised pair is fixed to the
/// canonical representative with 0 <= q2' < p2; the normalised data do
/// not depend on that choice.
struct SeifertData {
    long long genus = 0;
    long long p1 = 1, p2 = 1;
    long long q1p = 0, q2p = 0; // unnormalised q'
    long long m1 = 0, m2 = 0;
    long long q1 = 0, q2 = 0;   // normalised, 0 <= q_j < p_j
    long long b = 0;
};

inline SeifertData seifert_invariants(long long p1, long long p2) {
    if (p1 < 1 || p2 < 1) throw std::invalid_argument("seifert_invariants: p1, p2 must be positive");
    if (std::gcd(p1, p2) != 1) throw std::invalid_argument("seifert_invariants: p1, p2 must be coprime");
    SeifertData d;
    d.p1 = p1;
    d.p2 = p2;
    const XgcdResult e = xgcd(p1, p2); // x*p1 + y*p2 = 1
    // Canonical solution of p1*q2' + p2*q1' = 1 with q2' in [0, p2).
    d.q2p = ((e.x % p2) + p2) % p2;
    d.q1p = (1 - p1 * d.q2p) / p2;
    d.m1 = floor_div(d.q1p, p1);
    d.q1 = d.q1p - d.m1 * p1;
    d.m2 = floor_div(d.q2p, p2);
    d.q2 = d.q2p - d.m2 * p2;
    d.b = d.m1 + d.m2;
    return d;
}

/// Seifert data of the parametric foliation with rational a in (0, 1):
/// reduce a/(1-a) = p1/p2 and delegate.
inline SeifertData seifert_from_parameter(const Rational& a) {
    if (!(a.num > 0 && a.num < a.den))
        throw std::invalid_argument("seifert_from_parameter: a must lie in (0,1)");
    const Rational ratio{a.num, a.den - a.num}; // a/(1-a), reduced by the constructor
    return seifert_invariants(ratio.num, ratio.den);
}

/// Continued-fraction rationalization with a denominator cap (CLI
/// convenience for floating parameters).
inline Rational rationalize(double x, long long max_den = 1000000) {
    if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(frac);
        const long long ai = static_cast<long long>(fl);
        const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < 1e-15) break;
        const double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return {p1, q1};
}

/// Descent of the weighted circle action to the lens space L(m, m-1),
/// m = k1 + k2: the quotient Seifert fibration has base S^2(k1, k2),
/// regular fibers of length 2 pi/(p1+p2) and multiple fibers of length
/// 2 pi/(p1 m), 2 pi/(p2 m). Fiber lengths are stored as exact fractions
/// of 2 pi.
struct LensDescent {
    long long k1 = 1, k2 = 1;
    long long p1 = 1, p2 = 1;
    long long m = 2;
    Rational regular_fiber_len;            // in units of 2 pi
    std::array<Rational, 2> multiple_fiber_lens;
    std::array<long long, 2> multiplicities;
    bool theta_realized = false; // minimal theta attained by an admissible (k, l1, l2)
};

inline LensDescent descend_lens(long long k1, long long k2) {
    if (k1 < 1 || k2 < 1) throw std::invalid_argument("descend_lens: k1, k2 must be positive");
    LensDescent d;
    d.k1 = k1;
    d.k2 = k2;
    const long long g = std::gcd(k1, k2);
    d.p1 = k1 / g;
    d.p2 = k2 / g;
    d.m = k1 + k2;
    d.regular_fiber_len = Rational{1, d.p1 + d.p2};
    d.multiple_fiber_lens = {Rational{1, d.p1 * d.m}, Rational{1, d.p2 * d.m}};
    d.multiplicities = {(d.regular_fiber_len / d.multiple_fiber_lens[0]).num,
                        (d.regular_fiber_len / d.multiple_fiber_lens[1]).num};
    // Verify by direct search that theta = 2 pi/(p1+p2) is attained:
    // p1 theta = 2 pi (k/m + l1), p2 theta = 2 pi (-k/m + l2).
    const Rational theta{1, d.p1 + d.p2};
    for (long long k = 1; k <= d.m && !d.theta_realized; ++k)
        for (long long l1 = 0; l1 < d.p1 && !d.theta_realized; ++l1)
            for (long long l2 = 1; l2 <= d.p2; ++l2)
                if (Rational{d.p1} * theta == Rational{k, d.m} + Rational{l1} &&
                    Rational{d.p2} * theta == Rational{-k, d.m} + Rational{l2}) {
                    d.theta_realized = true;
                    break;
                }
    if (!d.theta_realized) throw numerical_error("descend_lens: minimal fiber length not realized");
    return d;
}

/// Resonance report for the eigenvalue pair (a, 1-a): the normal form
/// acquires the term z2^n d/dz1 exactly when a/(1-a) = n in {2, 3, ...};
/// the mirror entry records (1-a)/a in {2, 3, ...}.
struct ResonanceReport {
    std::optional<long long> n;
    std::optional<long long> mirror;
};

inline ResonanceReport resonance_check(const Rational& a) {
    ResonanceReport r;
    const bool real_in_01 = a.num > 0 && a.num < a.den;
    if (!real_in_01) return r;
    const Rational ratio{a.num, a.den - a.num};
    if (ratio.den == 1 && ratio.num >= 2) r.n = ratio.num;
    const Rational mirror{a.den - a.num, a.num};
    if (mirror.den == 1 && mirror.num >= 2) r.mirror = mirror.num;
    return r;
}

inline ResonanceReport resonance_check(cplx a) {
    if (!(a.imag() != 0.0 || (a.real() > 0.0 && a.real() < 1.0)))
        throw std::invalid_argument("resonance_check: a outside parameter domain");
    ResonanceReport r;
    if (a.imag() != 0.0) return r;
    const double x = a.real();
    const double ratio = x / (1.0 - x);
    const double rn = std::round(ratio);
    if (rn >= 2.0 && std::abs(ratio - rn) <= 1e-12 * std::max(1.0, std::abs(ratio)))
        r.n = static_cast<long long>(rn);
    const double mirror = (1.0 - x) / x;
    const double rm = std::round(mirror);
    if (rm >= 2.0 && std::abs(mirror - rm) <= 1e-12 * std::max(1.0, std::abs(mirror)))
        r.mirror = static_cast<long long>(rm);
    return r;
}

} // namespace s3fol
