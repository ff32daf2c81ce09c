#pragma once

#include "s3fol/leaf.hpp"
#include "s3fol/section.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace s3fol {

inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// CSV emission of a trace; column order is part of the CLI contract:
/// t, x1, y1, x2, y2, theta1_lift, theta2_lift, drift. The drift column is
/// the deviation of the leaf constants from their start-of-trace values
/// (0 when the constants are undefined, e.g. on a Hopf circle).
inline void write_trace_csv(std::ostream& os, const LeafTrace& tr) {
    os << "t,x1,y1,x2,y2,theta1_lift,theta2_lift,drift\n";
    const bool par = tr.spec.is_parametric();
    double u = 0.0, v = 0.0, lambda = 1.0;
    int n = 1;
    if (par) {
        const cplx uvc = uv_parameter(tr.spec.a());
        u = uvc.real();
        v = uvc.imag();
    } else {
        n = tr.spec.n();
        lambda = tr.spec.lambda();
    }
    bool have_ref = false;
    double ref_a = 0.0, ref_b = 0.0;
    for (const auto& s : tr.samples) {
        double drift = 0.0;
        const bool defined = par ? (s.p.r1() > 1e-12 && s.p.r2() > 1e-12) : (s.p.r2() > 1e-12);
        if (defined) {
            double ca, cb;
            if (par) {
                const double lr1 = std::log(s.p.r1());
                ca = std::log(s.p.r2()) - u * lr1 + v * s.theta1_lift;
                cb = s.theta2_lift - u * s.theta1_lift - v * lr1;
            } else {
                const cplx xy = s.p.z1() / pow_int(s.p.z2(), n);
                ca = -(xy.real() - lambda * std::log(s.p.r2()));
                cb = lambda * s.theta2_lift - xy.imag();
            }
            if (!have_ref) {
                ref_a = ca;
                ref_b = cb;
                have_ref = true;
            }
            drift = std::max(std::abs(ca - ref_a), std::abs(cb - ref_b));
        }
        os << fmt_g17(s.t) << ',' << fmt_g17(s.p.x1()) << ',' << fmt_g17(s.p.y1()) << ','
           << fmt_g17(s.p.x2()) << ',' << fmt_g17(s.p.y2()) << ',' << fmt_g17(s.theta1_lift)
           << ',' << fmt_g17(s.theta2_lift) << ',' << fmt_g17(drift) << '\n';
    }
}

/// Minimal fixed-size SVG writer: one or more panels of polylines, each
/// panel independently scaled to its data box. A metadata comment
/// recording the generating parameters is embedded so figures can be
/// regenerated from their own header.
class SvgWriter {
public:
    struct Panel {
        std::string title;
        std::vector<Polyline> lines;
        bool unit_disc = false; // draw the unit circle and fix the box to [-1,1]^2
    };

    explicit SvgWriter(std::string metadata) : metadata_(std::move(metadata)) {}

    void add_panel(Panel p) { panels_.push_back(std::move(p)); }

    void write(std::ostream& os) const {
        const int pw = 320, ph = 320, margin = 30;
        const int w = pw * static_cast<int>(panels_.size()), h = ph;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        os << "<!-- " << metadata_ << " -->\n";
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
           << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
        os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
        for (std::size_t k = 0; k < panels_.size(); ++k) {
            const Panel& p = panels_[k];
            double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
            if (!p.unit_disc) {
                bool first = true;
                for (const auto& pl : p.lines)
                    for (const auto& q : pl) {
                        if (first) {
                            x0 = x1 = q[0];
                            y0 = y1 = q[1];
                            first = false;
                        }
                        x0 = std::min(x0, q[0]);
                        x1 = std::max(x1, q[0]);
                        y0 = std::min(y0, q[1]);
                        y1 = std::max(y1, q[1]);
                    }
                if (first || x1 - x0 < 1e-12) x1 = x0 + 1.0;
                if (y1 - y0 < 1e-12) y1 = y0 + 1.0;
            }
            const double ox = static_cast<double>(pw) * static_cast<double>(k) + margin;
            const double sx = (pw - 2.0 * margin) / (x1 - x0);
            const double sy = (ph - 2.0 * margin) / (y1 - y0);
            auto X = [&](double x) { return ox + (x - x0) * sx; };
            auto Y = [&](double y) { return ph - margin - (y - y0) * sy; };
            os << "<rect x=\"" << X(x0) << "\" y=\"" << Y(y1) << "\" width=\"" << (x1 - x0) * sx
               << "\" height=\"" << (y1 - y0) * sy << "\" fill=\"none\" stroke=\"#888\"/>\n";
            if (p.unit_disc)
                os << "<circle cx=\"" << X(0.0) << "\" cy=\"" << Y(0.0) << "\" r=\"" << sx
                   << "\" fill=\"none\" stroke=\"#888\"/>\n";
            os << "<text x=\"" << ox << "\" y=\"" << margin - 8 << "\" font-size=\"12\">"
               << p.title << "</text>\n";
            for (const auto& pl : p.lines) {
                if (pl.size() < 2) continue;
                os << "<polyline fill=\"none\" stroke=\"#1f3d99\" stroke-width=\"0.8\" points=\"";
                for (const auto& q : pl) os << X(q[0]) << ',' << Y(q[1]) << ' ';
                os << "\"/>\n";
            }
        }
        os << "</svg>\n";
    }

private:
    std::string metadata_;
    std::vector<Panel> panels_;
};

/// The three standard trace projections: (theta1, r1), the unrolled
/// torus (theta1, theta2), and the section-disc view (x2, y2).
inline void write_trace_svg(std::ostream& os, const LeafTrace& tr, const std::string& metadata) {
    SvgWriter svg(metadata);
    Polyline a, b, c;
    for (const auto& s : tr.samples) {
        a.push_back({s.theta1_lift, s.p.r1()});
        b.push_back({s.theta1_lift, s.theta2_lift});
        c.push_back({s.p.x2(), s.p.y2()});
    }
    svg.add_panel({"r1 vs theta1", {a}, false});
    svg.add_panel({"theta2 vs theta1", {b}, false});
    svg.add_panel({"disc view (x2, y2)", {c}, true});
    svg.write(os);
}

} // namespace s3fol
