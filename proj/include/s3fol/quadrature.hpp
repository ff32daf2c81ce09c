#pragma once

#include "s3fol/sphere.hpp"

#include <mutex>
#include <thread>
#include <vector>

namespace s3fol {

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b], by Newton iteration on the
/// Legendre recurrence.
inline GaussLegendre gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussLegendre out;
    out.nodes.resize(static_cast<std::size_t>(n));
    out.weights.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double x = std::cos(pi * (static_cast<double>(k) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double half = 0.5 * (b - a);
        out.nodes[static_cast<std::size_t>(k)] = a + half * (1.0 + x);
        out.weights[static_cast<std::size_t>(k)] = 2.0 * half / ((1.0 - x * x) * dp * dp);
    }
    return out;
}

struct S3Grid {
    int n_eta = 48;
    int n_theta1 = 64;
    int n_theta2 = 64;
};

/// Chart point together with the coordinate frame of the chart
/// (cos(eta) e^{i theta1}, sin(eta) e^{i theta2}).
struct ChartFrame {
    PointS3 p;
    Vec4 d_eta, d_theta1, d_theta2;
};

inline ChartFrame hopf_frame(double eta, double t1, double t2) {
    const double ce = std::cos(eta), se = std::sin(eta);
    const double c1 = std::cos(t1), s1 = std::sin(t1);
    const double c2 = std::cos(t2), s2 = std::sin(t2);
    ChartFrame f{PointS3(cplx{ce * c1, ce * s1}, cplx{se * c2, se * s2}),
                 {-se * c1, -se * s1, ce * c2, ce * s2},
                 {-ce * s1, ce * c1, 0.0, 0.0},
                 {0.0, 0.0, -se * s2, se * c2}};
    return f;
}

/// Integral over S^3, oriented as the boundary of the unit ball, of a
/// complex 3-form sampled through its chart-frame evaluation. Gauss-
/// Legendre in eta, trapezoid in the two periodic angles. The positively
/// oriented chart frame is (d_eta, d_theta2, d_theta1); integrands must
/// evaluate in that order. Rows of constant eta are reduced in fixed index
/// order, so the result is identical for any thread count.
template <class F>
cplx integrate_chart(F&& f, const S3Grid& g, int threads = 1) {
    if (g.n_eta < 2 || g.n_theta1 < 2 || g.n_theta2 < 2)
        throw std::invalid_argument("integrate_chart: grid too small");
    const GaussLegendre gl = gauss_legendre(g.n_eta, 0.0, pi / 2.0);
    const double w1 = 2.0 * pi / g.n_theta1;
    const double w2 = 2.0 * pi / g.n_theta2;

    std::vector<cplx> row(static_cast<std::size_t>(g.n_eta), cplx{0.0, 0.0});
    auto run_row = [&](int ie) {
        const double eta = gl.nodes[static_cast<std::size_t>(ie)];
        cplx acc{0.0, 0.0};
        for (int i1 = 0; i1 < g.n_theta1; ++i1) {
            const double t1 = w1 * i1;
            for (int i2 = 0; i2 < g.n_theta2; ++i2) {
                const double t2 = w2 * i2;
                acc += f(hopf_frame(eta, t1, t2));
            }
        }
        row[static_cast<std::size_t>(ie)] = acc * (gl.weights[static_cast<std::size_t>(ie)] * w1 * w2);
    };

    if (threads <= 1) {
        for (int ie = 0; ie < g.n_eta; ++ie) run_row(ie);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mx;
        const int nt = std::min(threads, g.n_eta);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t ie;
                    {
                        std::lock_guard<std::mutex> lock(mx);
                        if (next >= static_cast<std::size_t>(g.n_eta)) return;
                        ie = next++;
                    }
                    run_row(static_cast<int>(ie));
                }
            });
        for (auto& th : pool) th.join();
    }

    cplx total{0.0, 0.0};
    for (const cplx& r : row) total += r;
    return total;
}

} // namespace s3fol
