#include "s3fol/bott.hpp"
#include "s3fol/fields.hpp"

#include <catch2/catch.hpp>

using namespace s3fol;

namespace {

FormValue random_form(Rng& rng, int degree) {
    FormValue f(degree);
    for (int i = 0; i < f.size(); ++i) f[i] = cplx{rng.gaussian(), rng.gaussian()};
    return f;
}

} // namespace

TEST_CASE("hopf_point maps chart coordinates onto the sphere", "[forms]") {
    SECTION("chart poles") {
        const PointS3 p = hopf_point(0.0, 0.0, 0.0);
        REQUIRE(std::abs(p.z1() - cplx{1.0, 0.0}) < 1e-15);
        REQUIRE(std::abs(p.z2()) < 1e-15);
        const PointS3 q = hopf_point(pi / 2, 0.0, pi / 2);
        REQUIRE(std::abs(q.z1()) < 1e-15);
        REQUIRE(std::abs(q.z2() - iu) < 1e-15);
    }
    SECTION("generic chart point against direct complex arithmetic") {
        const PointS3 p = hopf_point(pi / 4, pi / 3, -pi / 6);
        const cplx w1 = std::cos(pi / 4) * std::exp(iu * (pi / 3));
        const cplx w2 = std::sin(pi / 4) * std::exp(iu * (-pi / 6));
        REQUIRE(std::abs(p.z1() - w1) < 1e-15);
        REQUIRE(std::abs(p.z2() - w2) < 1e-15);
    }
    SECTION("eta out of range rejected") {
        REQUIRE_THROWS_AS(hopf_point(-0.5, 0, 0), std::invalid_argument);
        REQUIRE_THROWS_AS(hopf_point(2.0, 0, 0), std::invalid_argument);
    }
    SECTION("unit-norm invariant at random chart samples") {
        Rng rng(20240811);
        for (int i = 0; i < 10000; ++i) {
            const PointS3 p = hopf_point(rng.uniform(0.0, pi / 2), rng.uniform(0.0, 2 * pi),
                                         rng.uniform(0.0, 2 * pi));
            REQUIRE(std::abs(p.coords()[0] * p.coords()[0] + p.coords()[1] * p.coords()[1] +
                             p.coords()[2] * p.coords()[2] + p.coords()[3] * p.coords()[3] - 1.0) <
                    1e-14);
        }
    }
}

TEST_CASE("eval_wedge on basis forms and vectors", "[forms]") {
    const PointS3 p = hopf_point(pi / 4, 0.2, 0.9);
    const TangentVector ex1{{1, 0, 0, 0}, p}, ey1{{0, 1, 0, 0}, p}, ex2{{0, 0, 1, 0}, p};

    SECTION("dz1 on d/dx1 equals 1") {
        const FormValue f = dz1();
        const TangentVector vs[] = {ex1};
        REQUIRE(std::abs(eval_wedge(std::span<const FormValue>(&f, 1),
                                    std::span<const TangentVector>(vs, 1)) -
                         cplx{1.0, 0.0}) < 1e-15);
    }
    SECTION("dz1^dz2 is antisymmetric in its arguments") {
        const FormValue fs[] = {dz1(), dz2()};
        const TangentVector ab[] = {ex1, ex2};
        const TangentVector ba[] = {ex2, ex1};
        REQUIRE(std::abs(eval_wedge(std::span<const FormValue>(fs, 2),
                                    std::span<const TangentVector>(ab, 2)) -
                         cplx{1.0, 0.0}) < 1e-15);
        REQUIRE(std::abs(eval_wedge(std::span<const FormValue>(fs, 2),
                                    std::span<const TangentVector>(ba, 2)) +
                         cplx{1.0, 0.0}) < 1e-15);
    }
    SECTION("dz1^dzbar1 on (d/dx1, d/dy1) equals -2i") {
        const FormValue fs[] = {dz1(), dzbar1()};
        const TangentVector vs[] = {ex1, ey1};
        REQUIRE(std::abs(eval_wedge(std::span<const FormValue>(fs, 2),
                                    std::span<const TangentVector>(vs, 2)) -
                         cplx{0.0, -2.0}) < 1e-15);
    }
    SECTION("degree/count mismatch and base mismatch are rejected") {
        const FormValue fs[] = {dz1(), dz2()};
        const TangentVector vs[] = {ex1};
        REQUIRE_THROWS_AS(eval_wedge(std::span<const FormValue>(fs, 2),
                                     std::span<const TangentVector>(vs, 1)),
                          std::invalid_argument);
        const TangentVector other{{0, 0, 1, 0}, hopf_point(0.3, 0.0, 0.0)};
        const TangentVector mixed[] = {ex1, other};
        REQUIRE_THROWS_AS(eval_wedge(std::span<const FormValue>(fs, 2),
                                     std::span<const TangentVector>(mixed, 2)),
                          std::invalid_argument);
    }
}

TEST_CASE("wedge is graded antisymmetric and matches the 1-form identity", "[forms]") {
    Rng rng(7);
    for (int deg_a = 1; deg_a <= 3; ++deg_a)
        for (int deg_b = 1; deg_a + deg_b <= 4; ++deg_b)
            for (int rep = 0; rep < 20; ++rep) {
                const FormValue a = random_form(rng, deg_a);
                const FormValue b = random_form(rng, deg_b);
                const FormValue ab = wedge(a, b);
                FormValue ba = wedge(b, a);
                const double sgn = (deg_a * deg_b) % 2 == 0 ? 1.0 : -1.0;
                REQUIRE(coeff_norm(ab - sgn * ba) < 1e-12 * (1.0 + coeff_norm(ab)));
            }

    const PointS3 p = hopf_point(0.7, 1.1, -0.4);
    for (int rep = 0; rep < 50; ++rep) {
        const FormValue a = random_form(rng, 1);
        const FormValue b = random_form(rng, 1);
        const TangentVector u = random_tangent(rng, p), v = random_tangent(rng, p);
        const Vec4 uu = u.v, vv = v.v;
        const cplx au = eval(a, std::span<const Vec4>(&uu, 1));
        const cplx av = eval(a, std::span<const Vec4>(&vv, 1));
        const cplx bu = eval(b, std::span<const Vec4>(&uu, 1));
        const cplx bv = eval(b, std::span<const Vec4>(&vv, 1));
        const Vec4 pair[] = {uu, vv};
        const cplx lhs = eval(wedge(a, b), std::span<const Vec4>(pair, 2));
        REQUIRE(std::abs(lhs - (au * bv - av * bu)) < 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("numeric exterior derivative", "[forms]") {
    SECTION("field z1 dz2 has derivative dz1^dz2") {
        const FormField f{1, [](const CPoint& p) { return p.z1 * dz2(); }, nullptr};
        const PointS3 p = hopf_point(0.9, 0.3, 2.0);
        const FormValue d = numeric_d(f, p, 1e-4);
        REQUIRE(coeff_norm(d - wedge(dz1(), dz2())) < 1e-8);
    }
    SECTION("constant-coefficient field has vanishing derivative") {
        const FormField f{1, [](const CPoint&) { return 2.5 * dz1() - iu * dz2(); }, nullptr};
        REQUIRE(coeff_norm(numeric_d(f, hopf_point(0.4, 1.0, 1.0), 1e-4)) < 1e-12);
    }
    SECTION("alpha field at (1,0) against its hand-derived symbolic derivative") {
        // For alpha = (zbar1 dz1 / a + zbar2 dz2 / (1-a)) / |z|^2 one finds
        // d alpha at (1,0) = (2i/(1-a)) dx2^dy2.
        const cplx a{0.3, 0.4};
        const FoliationSpec s = FoliationSpec::parametric(a);
        const FormField f{1, [s](const CPoint& q) { return analytic_alpha(s, q); }, nullptr};
        const PointS3 p(cplx{1.0, 0.0}, cplx{0.0, 0.0});
        FormValue expect(2);
        expect[5] = 2.0 * iu / (1.0 - a); // dx2^dy2 slot
        REQUIRE(coeff_norm(numeric_d(f, p, 1e-4) - expect) < 1e-7);
        // and the module's own analytic derivative agrees
        REQUIRE(coeff_norm(analytic_alpha_d(s, p) - expect) < 1e-13);
    }
    SECTION("step validation") {
        const FormField f{1, [](const CPoint&) { return dz1(); }, nullptr};
        REQUIRE_THROWS_AS(numeric_d(f, CPoint{1.0, 0.0}, 0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(numeric_d(f, CPoint{1.0, 0.0}, 0.5), std::invalid_argument);
    }
    SECTION("d of d is O(step^2) at random points") {
        const FormField f{1,
                          [](const CPoint& p) {
                              FormValue w(1);
                              w[0] = std::sin(p.z1.real() + 0.3 * p.z1.imag()) +
                                     iu * std::cos(p.z2.real());
                              w[1] = std::exp(0.2 * (p.z1.real() - p.z2.imag()));
                              w[2] = p.z1.real() * p.z2.real() + iu * p.z1.imag();
                              w[3] = std::cos(p.z1.real() * p.z2.imag());
                              return w;
                          },
                          nullptr};
        Rng rng(99);
        const double step = 1e-4;
        for (int i = 0; i < 100; ++i) {
            const PointS3 p = random_point(rng);
            const FormField df{2, [&](const CPoint& q) { return numeric_d(f, q, step); }, nullptr};
            REQUIRE(coeff_norm(numeric_d(df, p, step)) < 1e-5);
        }
    }
}

TEST_CASE("tangent projection", "[forms]") {
    const PointS3 p(cplx{1.0, 0.0}, cplx{0.0, 0.0});
    SECTION("radial direction is annihilated") {
        const TangentVector radial{{1, 0, 0, 0}, p};
        REQUIRE(norm(tangent_projection(p, radial).v) < 1e-15);
    }
    SECTION("tangent direction is fixed") {
        const TangentVector t{{0, 1, 0, 0}, p};
        const TangentVector out = tangent_projection(p, t);
        REQUIRE(norm(sub(out.v, t.v)) < 1e-15);
    }
    SECTION("result is tangent at random points") {
        Rng rng(3);
        for (int i = 0; i < 200; ++i) {
            const PointS3 q = random_point(rng);
            const TangentVector raw{{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()},
                                    q};
            const TangentVector out = tangent_projection(q, raw);
            REQUIRE(std::abs(dot(out.v, q.coords())) < 1e-14 * std::max(1.0, norm(out.v)));
        }
    }
}

TEST_CASE("contract is the interior product", "[forms]") {
    Rng rng(11);
    const PointS3 p = hopf_point(0.5, 0.1, 0.2);
    for (int rep = 0; rep < 30; ++rep) {
        const FormValue w = random_form(rng, 2);
        const TangentVector u = random_tangent(rng, p), v = random_tangent(rng, p);
        const Vec4 vv = v.v;
        const Vec4 pair[] = {u.v, vv};
        const cplx direct = eval(w, std::span<const Vec4>(pair, 2));
        const cplx via = eval(contract(w, u.v), std::span<const Vec4>(&vv, 1));
        REQUIRE(std::abs(direct - via) < 1e-13 * (1.0 + std::abs(direct)));
    }
}
