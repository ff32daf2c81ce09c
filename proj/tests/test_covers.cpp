#include "s3fol/covers.hpp"
#include "s3fol/leaf.hpp"

#include <catch2/catch.hpp>

using namespace s3fol;

namespace {

// Direct parametrization of Sigma_n: pick z2 inside the unit disc and the
// phase of z1; the modulus of z1 is forced by the defining equation.
CoverPoint sigma_point(int n, Rng& rng) {
    const double r2 = std::pow(rng.uniform(0.05, 0.95), 1.0 / n);
    const cplx z2 = std::polar(r2, rng.uniform(0.0, 2 * pi));
    const double m = std::sqrt(std::max(0.0, 1.0 - std::pow(std::norm(z2), n))) / n;
    const cplx z1 = std::polar(m, rng.uniform(0.0, 2 * pi));
    return {{z1, z2}, Surface::sigma_n, n};
}

double zeta_bisection(int n, const PointS3& p) {
    auto f = [&](double zeta) {
        const double e = std::exp(2.0 * n * zeta);
        const cplx A = p.z1() + zeta * pow_int(p.z2(), n);
        return n * n * e * std::norm(A) + e * std::pow(std::norm(p.z2()), n) - 1.0;
    };
    double lo = -16.0, hi = 16.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * pi)); }

} // namespace

TEST_CASE("branched covering of the sphere", "[covers]") {
    SECTION("fixed points and the branch locus") {
        const PointS3 a = branched_cover(2, CoverPoint{{{0.0, 0.0}, {1.0, 0.0}}, Surface::sigma_n, 2});
        REQUIRE(std::abs(a.z1()) < 1e-15);
        REQUIRE(std::abs(a.z2() - cplx{1.0, 0.0}) < 1e-15);
        const PointS3 b = branched_cover(2, CoverPoint{{{0.5, 0.0}, {0.0, 0.0}}, Surface::sigma_n, 2});
        REQUIRE(std::abs(b.z1() - cplx{1.0, 0.0}) < 1e-15);
        REQUIRE(std::abs(b.z2()) < 1e-15);
    }
    SECTION("images satisfy the sphere equation to rounding") {
        Rng rng(13);
        for (int i = 0; i < 300; ++i) {
            const CoverPoint p = sigma_point(3, rng);
            const PointS3 q = branched_cover(3, p);
            double s = 0.0;
            for (const double c : q.coords()) s += c * c;
            REQUIRE(std::abs(s - 1.0) < 1e-14);
        }
    }
    SECTION("wrong surface tag is rejected") {
        REQUIRE_THROWS_AS(branched_cover(2, CoverPoint{{{1.0, 0.0}, {0.0, 0.0}}, Surface::round_sphere, 2}),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(branched_cover(2, CoverPoint{{{1.0, 0.0}, {0.0, 0.0}}, Surface::sigma_n, 2}),
                          std::invalid_argument); // violates the Sigma_2 equation
    }
    SECTION("a generic point has n preimages") {
        Rng rng(17);
        for (const int n : {2, 3}) {
            const PointS3 q = random_point(rng);
            int found = 0;
            const cplx w2 = q.z2();
            const double r = std::pow(std::abs(w2), 1.0 / n);
            const double base_arg = std::arg(w2) / n;
            for (int k = 0; k < n; ++k) {
                const cplx z2 = std::polar(r, base_arg + 2.0 * pi * k / n);
                const CoverPoint pre{{q.z1() / static_cast<double>(n), z2}, Surface::sigma_n, n};
                REQUIRE(std::abs(sigma_defect(n, pre.p)) < 1e-12);
                const PointS3 img = branched_cover(n, pre);
                if (std::abs(img.z1() - q.z1()) + std::abs(img.z2() - q.z2()) < 1e-10) ++found;
            }
            REQUIRE(found == n);
        }
    }
}

TEST_CASE("implicit flow-time equation", "[covers]") {
    SECTION("closed form on the branch circle") {
        for (const int n : {1, 2, 5}) {
            const PointS3 p(cplx{1.0, 0.0}, cplx{0.0, 0.0});
            REQUIRE(solve_zeta(n, p) ==
                    Approx(-std::log(static_cast<double>(n)) / n).margin(1e-14));
        }
    }
    SECTION("root at the second pole for n = 2") {
        REQUIRE(std::abs(solve_zeta(2, PointS3(cplx{0.0, 0.0}, cplx{1.0, 0.0}))) < 1e-12);
    }
    SECTION("agrees with a bisection oracle and has tiny residual") {
        Rng rng(23);
        for (int i = 0; i < 100; ++i) {
            const PointS3 p = random_point(rng);
            const double z = solve_zeta(1, p, 1e-14);
            REQUIRE(z == Approx(zeta_bisection(1, p)).margin(1e-11));
            const double e = std::exp(2.0 * z);
            const double resid = e * (std::norm(p.z1() + z * p.z2()) + std::norm(p.z2())) - 1.0;
            REQUIRE(std::abs(resid) < 1e-12);
        }
    }
    SECTION("Newton tail converges superlinearly") {
        Rng rng(29);
        for (int i = 0; i < 100; ++i) {
            const PointS3 p = random_point(rng);
            std::vector<double> trace;
            solve_zeta(2, p, 1e-14, &trace);
            REQUIRE(trace.size() >= 3);
            const double r1 = trace[trace.size() - 2];
            const double r2 = trace[trace.size() - 1];
            if (r1 > 0.0 && r1 < 1e-3)
                REQUIRE(r2 <= std::pow(r1, 1.5) + 1e-15);
        }
    }
}

TEST_CASE("leaf-preserving map onto the deformed sphere", "[covers]") {
    SECTION("closed-form chain at the branch point") {
        const CoverPoint q = phi_n(2, PointS3(cplx{1.0, 0.0}, cplx{0.0, 0.0}));
        REQUIRE(std::abs(q.p.z1 - cplx{0.5, 0.0}) < 1e-13);
        REQUIRE(std::abs(q.p.z2) < 1e-15);
        REQUIRE(std::abs(sigma_defect(2, q.p)) < 1e-13);
    }
    SECTION("points already on Sigma_n are fixed (zeta = 0)") {
        const PointS3 p(cplx{0.0, 0.0}, cplx{1.0, 0.0});
        const CoverPoint q = phi_n(2, p);
        REQUIRE(std::abs(q.p.z1 - p.z1()) < 1e-13);
        REQUIRE(std::abs(q.p.z2 - p.z2()) < 1e-13);
    }
    SECTION("images satisfy the Sigma_n equation") {
        Rng rng(31);
        for (int i = 0; i < 200; ++i) {
            const CoverPoint q = phi_n(3, random_point(rng));
            REQUIRE(std::abs(sigma_defect(3, q.p)) < 1e-10);
        }
    }
}

TEST_CASE("pullback identity of the covering", "[covers]") {
    Rng rng(37);
    SECTION("exact for n = 1") {
        for (int i = 0; i < 50; ++i) {
            const PointS3 p = random_point(rng);
            const CoverPoint cp{{p.z1(), p.z2()}, Surface::sigma_n, 1};
            const Vec4 u = sigma_tangent_project(1, cp.p, {rng.gaussian(), rng.gaussian(),
                                                           rng.gaussian(), rng.gaussian()});
            REQUIRE(pullback_residual(1, cp, u) < 1e-14);
        }
    }
    SECTION("vanishes to rounding for n = 2 and n = 3") {
        for (const int n : {2, 3})
            for (int i = 0; i < 100; ++i) {
                const CoverPoint cp = sigma_point(n, rng);
                const Vec4 u = sigma_tangent_project(n, cp.p, {rng.gaussian(), rng.gaussian(),
                                                               rng.gaussian(), rng.gaussian()});
                REQUIRE(pullback_residual(n, cp, u) < 1e-12);
            }
    }
    SECTION("both sides vanish on the branch locus") {
        const CoverPoint cp{{{1.0 / 3.0, 0.0}, {0.0, 0.0}}, Surface::sigma_n, 3};
        const Vec4 u = sigma_tangent_project(3, cp.p, {0.0, 1.0, 0.7, -0.2});
        REQUIRE(pullback_residual(3, cp, u) < 1e-14);
    }
    SECTION("non-tangent vectors are rejected") {
        const CoverPoint cp = sigma_point(2, rng);
        REQUIRE_THROWS_AS(pullback_residual(2, cp, sigma_gradient(2, cp.p)),
                          std::invalid_argument);
    }
}

TEST_CASE("covered leaves map to leaves of the base foliation", "[covers]") {
    // Trace a leaf of F_n upstairs, push every sample through Phi_n and
    // then the covering; the images must lie on one leaf of F_1.
    const int n = 2;
    const FoliationSpec above = FoliationSpec::discrete(n, 1.0);
    const FoliationSpec below = FoliationSpec::discrete(1, 1.0);
    const LeafTrace tr = trace_leaf(above, hopf_point(pi / 4, 0.3, 0.9), 10.0, 1e-10);
    double c1_ref = 0.0, c2_ref = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < tr.samples.size(); i += 5) {
        const PointS3 img = branched_cover(n, phi_n(n, tr.samples[i].p));
        const auto c = std::get<DiscreteConstants>(leaf_constants(below, img));
        if (first) {
            c1_ref = c.c1;
            c2_ref = c.c2;
            first = false;
        }
        REQUIRE(std::abs(c.c1 - c1_ref) < 1e-6);
        REQUIRE(circular_distance(c.c2, c2_ref) < 1e-6);
    }
}
