#pragma once

#include "s3fol/implicit.hpp"
#include "s3fol/leaf.hpp"

#include <vector>

namespace s3fol {

/// Hit of a leaf against the disc transversal after one full turn of the
/// longitude angle.
struct SectionReturn {
    cplx z_out;            ///< transverse coordinate at the section hit
    double time;           ///< flow time of the hit
    double arg_advance;    ///< continuous argument change of the transverse coordinate
    double log_mod_change; ///< log |z_out| - log |z_in|
};

namespace detail {

inline PointS3 disc_point(int leaf, cplx z) {
    const double m = std::sqrt(std::max(0.0, 1.0 - std::norm(z)));
    return leaf == 1 ? PointS3(cplx{m, 0.0}, z) : PointS3(z, cplx{m, 0.0});
}

// Follow the flow from the disc transversal of the given Hopf circle
// until the longitude lift advances by 2 pi. leaf 1: transversal
// {theta1 = 0}, transverse coordinate z2; leaf 2: {theta2 = 0},
// transverse coordinate z1. r_guard bounds the transverse radius.
inline SectionReturn section_return(const FoliationSpec& spec, int leaf, cplx z, double ode_tol,
                                    double r_guard) {
    if (!(std::abs(z) > 0.0 && std::abs(z) < 1.0))
        throw std::invalid_argument("section_return: seed must satisfy 0 < |z| < 1");
    const int lon = leaf == 1 ? 0 : 1; // longitude angle index
    const int trv = 1 - lon;           // transverse angle index
    FlowTracker fl(spec, disc_point(leaf, z), ode_tol);
    const auto s0 = fl.current();
    const double lon0 = lon == 0 ? s0.theta1_lift : s0.theta2_lift;
    const double trv0 = trv == 0 ? s0.theta1_lift : s0.theta2_lift;
    const double target = lon0 + 2.0 * pi;
    std::size_t guard = 0;
    while (true) {
        const auto s = fl.advance();
        const double r = lon == 0 ? s.p.r2() : s.p.r1();
        if (r > r_guard)
            throw numerical_error("section_return: trajectory left the transversality region");
        const double lift = lon == 0 ? s.theta1_lift : s.theta2_lift;
        if (lift >= target) {
            const auto hit = fl.cross_last(lon, target);
            const cplx zo = lon == 0 ? hit.p.z2() : hit.p.z1();
            const double trv_end = trv == 0 ? hit.theta1_lift : hit.theta2_lift;
            return {zo, hit.t, trv_end - trv0, std::log(std::abs(zo)) - std::log(std::abs(z))};
        }
        if (s.t > 1e5 || ++guard > 2000000)
            throw numerical_error("section_return: no return within the safety horizon");
    }
}

} // namespace detail

/// Poincare return map of the discrete foliation on the disc
/// {theta1 = 0, r2 < 1}, in the transverse coordinate z = z2. The center
/// z = 0 is the fixed point (the closed leaf itself).
inline cplx return_map(int n, cplx z, double ode_tol = 1e-9) {
    if (n < 1) throw std::invalid_argument("return_map: n must be >= 1");
    if (z == cplx{0.0, 0.0}) return z;
    if (!(std::abs(z) < 0.5)) throw std::invalid_argument("return_map: require |z| < 0.5");
    return detail::section_return(FoliationSpec::discrete(n), 1, z, ode_tol, 0.8).z_out;
}

enum class SeedClass { attracting, repelling, unclassified };

struct PetalCount {
    int count = 0;
    int n_seeds = 0;
    double radius = 0.0;
    std::vector<SeedClass> classes;
};

/// Count the attracting petals of the return map at the parabolic-type
/// fixed point: iterate seeds on a circle, classify each by the radial
/// trend over the transient-trimmed tail, and count maximal attracting
/// angular sectors.
inline PetalCount count_petals(int n, int n_seeds, int n_iter, double ode_tol = 1e-9,
                               double radius = 0.05) {
    if (n < 1) throw std::invalid_argument("count_petals: n must be >= 1");
    if (n_seeds < 8 * n || n_seeds % 8 != 0)
        throw std::invalid_argument("count_petals: n_seeds must be a multiple of 8 and >= 8n");
    if (n_iter < 4) throw std::invalid_argument("count_petals: n_iter too small");
    PetalCount pc;
    pc.n_seeds = n_seeds;
    pc.radius = radius;
    pc.classes.resize(static_cast<std::size_t>(n_seeds), SeedClass::unclassified);

    for (int k = 0; k < n_seeds; ++k) {
        cplx z = std::polar(radius, 2.0 * pi * k / n_seeds);
        std::vector<double> radii{std::abs(z)};
        bool escaped = false;
        for (int it = 0; it < n_iter; ++it) {
            try {
                z = return_map(n, z, ode_tol);
            } catch (const numerical_error&) {
                escaped = true; // left the section region: repelling
                break;
            } catch (const std::invalid_argument&) {
                escaped = true; // grew past the seed disc
                break;
            }
            radii.push_back(std::abs(z));
        }
        if (escaped) {
            pc.classes[static_cast<std::size_t>(k)] = SeedClass::repelling;
            continue;
        }
        // Trim the transient: look at the second half of the radii.
        const std::size_t half = radii.size() / 2;
        int dec = 0, inc = 0;
        for (std::size_t j = half; j + 1 < radii.size(); ++j) {
            if (radii[j + 1] < radii[j]) ++dec;
            if (radii[j + 1] > radii[j]) ++inc;
        }
        const double total = radii.back() - radii[half];
        const int moves = dec + inc;
        if (moves == 0) continue;
        if (total < 0.0 && dec >= 3 * moves / 4)
            pc.classes[static_cast<std::size_t>(k)] = SeedClass::attracting;
        else if (total > 0.0 && inc >= 3 * moves / 4)
            pc.classes[static_cast<std::size_t>(k)] = SeedClass::repelling;
    }

    int unclassified = 0;
    for (const auto c : pc.classes)
        if (c == SeedClass::unclassified) ++unclassified;
    if (unclassified * 10 > n_seeds)
        throw numerical_error("count_petals: too many unclassifiable seeds (radius too large)");

    // Count attracting sectors on the circle, skipping the (boundary)
    // unclassified seeds.
    std::vector<SeedClass> ring;
    for (const auto c : pc.classes)
        if (c != SeedClass::unclassified) ring.push_back(c);
    int sectors = 0;
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const SeedClass prev = ring[(i + m - 1) % m];
        if (ring[i] == SeedClass::attracting && prev == SeedClass::repelling) ++sectors;
    }
    if (sectors == 0 && !ring.empty() && ring.front() == SeedClass::attracting)
        sectors = 1; // all classified seeds attracting
    pc.count = sectors;
    return pc;
}

/// Planar polyline in the disc coordinates (r cos theta, r sin theta).
using Polyline = std::vector<std::array<double, 2>>;

/// Left-hand side profile r -> r^n (log r - c1) / sqrt(1 - r^2) of the
/// section-curve equation, with the r^n log r -> 0 limit built in.
inline double petal_curve_profile(int n, double c1, double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(r, n) * (std::log(r) - c1) / std::sqrt(std::max(1e-300, 1.0 - r * r));
}

/// Radii solving cos(n theta2) = petal_curve_profile(n, c1, r) at a fixed
/// angle, by grid scan plus bisection.
inline std::vector<double> petal_curve_radii(int n, double c1, double theta) {
    std::vector<double> roots;
    const double target = std::cos(n * theta);
    const int grid = 1200;
    const double rmax = 1.0 - 1e-9;
    double rp = 1e-9, fp = petal_curve_profile(n, c1, rp) - target;
    for (int i = 1; i <= grid; ++i) {
        const double r = rmax * i / grid;
        const double f = petal_curve_profile(n, c1, r) - target;
        if (fp == 0.0) roots.push_back(rp);
        if (fp * f < 0.0) {
            double lo = rp, hi = r;
            for (int it = 0; it < 70; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((petal_curve_profile(n, c1, mid) - target) * fp <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        rp = r;
        fp = f;
    }
    return roots;
}

/// Level curves cos(n theta2) = r2^n (log r2 - c1) / sqrt(1 - r2^2) of the
/// section foliation on the disc, sampled on a theta2 sweep with branch
/// tracking. The curve family is invariant under rotation by 2 pi / n.
inline std::vector<Polyline> petal_curves(int n, double c1, int n_samples) {
    if (n < 1) throw std::invalid_argument("petal_curves: n must be >= 1");
    if (n_samples < 100) throw std::invalid_argument("petal_curves: n_samples must be >= 100");

    auto roots_at = [&](double theta) { return petal_curve_radii(n, c1, theta); };

    std::vector<Polyline> curves;
    std::vector<int> active; // index into curves for each tracked branch
    std::vector<double> last_r;
    for (int k = 0; k <= n_samples; ++k) {
        const double theta = 2.0 * pi * k / n_samples;
        const auto roots = roots_at(theta);
        std::vector<int> next_active(roots.size(), -1);
        std::vector<bool> used(active.size(), false);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            int best = -1;
            double bestd = 0.04;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (used[i]) continue;
                const double d = std::abs(roots[j] - last_r[i]);
                if (d < bestd) {
                    bestd = d;
                    best = static_cast<int>(i);
                }
            }
            if (best >= 0) {
                used[static_cast<std::size_t>(best)] = true;
                next_active[j] = active[static_cast<std::size_t>(best)];
            } else {
                curves.emplace_back();
                next_active[j] = static_cast<int>(curves.size()) - 1;
            }
            curves[static_cast<std::size_t>(next_active[j])].push_back(
                {roots[j] * std::cos(theta), roots[j] * std::sin(theta)});
        }
        active = next_active;
        last_r = roots;
    }
    return curves;
}

} // namespace s3fol
