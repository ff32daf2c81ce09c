#pragma once

#include "s3fol/sphere.hpp"

#include <array>
#include <bit>
#include <span>

namespace s3fol {

namespace detail {

// Basis elements of Lambda^k(R^4)* indexed by 4-bit masks over the axes
// (x1, y1, x2, y2). Positions within a degree follow the lexicographic
// order of the index sets, which fixes the coefficient layout used in
// serialized output:
//   deg 1: dx1, dy1, dx2, dy2
//   deg 2: 01, 02, 03, 12, 13, 23
//   deg 3: 012, 013, 023, 123
inline constexpr int kDim[5] = {1, 4, 6, 4, 1};

inline constexpr unsigned kMasks[5][6] = {
    {0, 0, 0, 0, 0, 0},
    {1, 2, 4, 8, 0, 0},
    {3, 5, 9, 6, 10, 12},
    {7, 11, 13, 14, 0, 0},
    {15, 0, 0, 0, 0, 0},
};

inline constexpr int kPosOfMask[16] = {
    0,        // 0000
    0, 1,     // 0001 0010
    0,        // 0011
    2,        // 0100
    1, 3,     // 0101 0110
    0,        // 0111
    3,        // 1000
    2, 4,     // 1001 1010
    1,        // 1011
    5,        // 1100
    2, 3,     // 1101 1110
    0,        // 1111
};

// Sign of dx_A ^ dx_B relative to dx_{A union B}, for disjoint masks:
// parity of the number of index crossings when sorting A followed by B.
inline int merge_sign(unsigned a, unsigned b) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        if (b & (1u << i)) inv += std::popcount(a >> (i + 1));
    return (inv & 1) ? -1 : 1;
}

inline double det_small(const double* m, int n) {
    if (n == 0) return 1.0;
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    if (n == 3)
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    // n == 4, expand along the first row
    double d = 0.0;
    double minor[9];
    for (int c = 0; c < 4; ++c) {
        int k = 0;
        for (int r = 1; r < 4; ++r)
            for (int cc = 0; cc < 4; ++cc)
                if (cc != c) minor[k++] = m[4 * r + cc];
        const double term = m[c] * det_small(minor, 3);
        d += (c % 2 == 0) ? term : -term;
    }
    return d;
}

} // namespace detail

/// Complex-valued exterior form on R^4 at a point: a degree k in 0..4 and
/// the coefficient array over the canonical basis of Lambda^k(R^4)*.
class FormValue {
public:
    explicit FormValue(int degree) : deg_(degree) {
        if (degree < 0 || degree > 4) throw std::invalid_argument("FormValue: degree outside 0..4");
        c_.fill(cplx{0.0, 0.0});
    }

    static int dimension(int degree) { return detail::kDim[degree]; }

    int degree() const { return deg_; }
    int size() const { return detail::kDim[deg_]; }

    cplx& operator[](int pos) { return c_[static_cast<std::size_t>(pos)]; }
    const cplx& operator[](int pos) const { return c_[static_cast<std::size_t>(pos)]; }

    /// Coefficient addressed by the bitmask of its index set.
    cplx& by_mask(unsigned mask) { return c_[static_cast<std::size_t>(detail::kPosOfMask[mask])]; }
    const cplx& by_mask(unsigned mask) const {
        return c_[static_cast<std::size_t>(detail::kPosOfMask[mask])];
    }

    FormValue& operator+=(const FormValue& o) {
        require_same_degree(o);
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] += o[i];
        return *this;
    }
    FormValue& operator-=(const FormValue& o) {
        require_same_degree(o);
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] -= o[i];
        return *this;
    }
    FormValue& operator*=(cplx s) {
        for (int i = 0; i < size(); ++i) c_[static_cast<std::size_t>(i)] *= s;
        return *this;
    }

    friend FormValue operator+(FormValue a, const FormValue& b) { return a += b; }
    friend FormValue operator-(FormValue a, const FormValue& b) { return a -= b; }
    friend FormValue operator*(cplx s, FormValue a) { return a *= s; }
    friend FormValue operator*(FormValue a, cplx s) { return a *= s; }
    friend FormValue operator-(FormValue a) { return a *= cplx{-1.0, 0.0}; }

private:
    void require_same_degree(const FormValue& o) const {
        if (deg_ != o.deg_) throw std::invalid_argument("FormValue: degree mismatch");
    }

    int deg_;
    std::array<cplx, 6> c_{};
};

inline FormValue wedge(const FormValue& a, const FormValue& b) {
    const int deg = a.degree() + b.degree();
    if (deg > 4) throw std::invalid_argument("wedge: total degree exceeds 4");
    FormValue out(deg);
    for (int i = 0; i < a.size(); ++i) {
        const unsigned ma = detail::kMasks[a.degree()][i];
        if (a[i] == cplx{0.0, 0.0}) continue;
        for (int j = 0; j < b.size(); ++j) {
            const unsigned mb = detail::kMasks[b.degree()][j];
            if (ma & mb) continue;
            const int s = detail::merge_sign(ma, mb);
            out.by_mask(ma | mb) += static_cast<double>(s) * a[i] * b[j];
        }
    }
    return out;
}

/// Evaluate a k-form on k vectors (multilinear, alternating).
inline cplx eval(const FormValue& w, std::span<const Vec4> vectors) {
    const int k = w.degree();
    if (static_cast<int>(vectors.size()) != k)
        throw std::invalid_argument("eval: number of vectors must equal the degree");
    if (k == 0) return w[0];
    cplx out{0.0, 0.0};
    double m[16];
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] == cplx{0.0, 0.0}) continue;
        const unsigned mask = detail::kMasks[k][i];
        int axes[4], na = 0;
        for (int b = 0; b < 4; ++b)
            if (mask & (1u << b)) axes[na++] = b;
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) m[k * r + c] = vectors[static_cast<std::size_t>(c)][static_cast<std::size_t>(axes[r])];
        out += w[i] * detail::det_small(m, k);
    }
    return out;
}

/// Interior product v -| w.
inline FormValue contract(const FormValue& w, const Vec4& v) {
    const int k = w.degree();
    if (k == 0) throw std::invalid_argument("contract: cannot contract a 0-form");
    FormValue out(k - 1);
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] == cplx{0.0, 0.0}) continue;
        const unsigned mask = detail::kMasks[k][i];
        int pos = 0;
        for (int b = 0; b < 4; ++b) {
            if (!(mask & (1u << b))) continue;
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            out.by_mask(mask & ~(1u << b)) += sign * v[static_cast<std::size_t>(b)] * w[i];
            ++pos;
        }
    }
    return out;
}

inline FormValue conj_coefficients(const FormValue& w) {
    FormValue out(w.degree());
    for (int i = 0; i < w.size(); ++i) out[i] = std::conj(w[i]);
    return out;
}

inline FormValue real_part(const FormValue& w) {
    FormValue out(w.degree());
    for (int i = 0; i < w.size(); ++i) out[i] = cplx{w[i].real(), 0.0};
    return out;
}

inline FormValue imag_part(const FormValue& w) {
    FormValue out(w.degree());
    for (int i = 0; i < w.size(); ++i) out[i] = cplx{w[i].imag(), 0.0};
    return out;
}

/// Euclidean norm of the coefficient array.
inline double coeff_norm(const FormValue& w) {
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i) s += std::norm(w[i]);
    return std::sqrt(s);
}

inline FormValue dx_form(int axis) {
    FormValue f(1);
    f[axis] = 1.0;
    return f;
}

inline FormValue dz1() {
    FormValue f(1);
    f[0] = 1.0;
    f[1] = iu;
    return f;
}

inline FormValue dz2() {
    FormValue f(1);
    f[2] = 1.0;
    f[3] = iu;
    return f;
}

inline FormValue dzbar1() { return conj_coefficients(dz1()); }
inline FormValue dzbar2() { return conj_coefficients(dz2()); }

/// Evaluate the wedge of several forms on tangent vectors sharing a base
/// point. Total degree must equal the number of vectors.
inline cplx eval_wedge(std::span<const FormValue> forms, std::span<const TangentVector> vectors) {
    if (forms.empty()) throw std::invalid_argument("eval_wedge: no forms");
    int deg = 0;
    for (const auto& f : forms) deg += f.degree();
    if (deg != static_cast<int>(vectors.size()))
        throw std::invalid_argument("eval_wedge: total degree does not match vector count");
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        const Vec4 d = sub(vectors[i].base.coords(), vectors[0].base.coords());
        if (norm(d) > 1e-9) throw std::invalid_argument("eval_wedge: vectors at different base points");
    }
    FormValue w = forms[0];
    for (std::size_t i = 1; i < forms.size(); ++i) w = wedge(w, forms[i]);
    std::array<Vec4, 4> raw{};
    for (std::size_t i = 0; i < vectors.size(); ++i) raw[i] = vectors[i].v;
    return eval(w, std::span<const Vec4>(raw.data(), vectors.size()));
}

} // namespace s3fol
