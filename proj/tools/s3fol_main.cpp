// s3fol: invariants, leaf dynamics, and integer data of the transversely
// holomorphic foliations on the 3-sphere. JSON in/out, deterministic for a
// fixed seed.

#include "s3fol/covers.hpp"
#include "s3fol/io.hpp"
#include "s3fol/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace s3fol;

cplx parse_complex(std::string s) {
    std::string t;
    for (const char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    if (t.find('/') != std::string::npos) {
        const std::size_t k = t.find('/');
        const double num = std::stod(t.substr(0, k));
        const double den = std::stod(t.substr(k + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return {num / den, 0.0};
    }
    if (t.find(',') != std::string::npos) {
        const std::size_t k = t.find(',');
        return {std::stod(t.substr(0, k)), std::stod(t.substr(k + 1))};
    }
    const bool has_i = t.back() == 'i' || t.back() == 'I';
    if (!has_i) return {std::stod(t), 0.0};
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (t.empty() || t == "+") return {0.0, 1.0};
        if (t == "-") return {0.0, -1.0};
        return {0.0, std::stod(t)};
    }
    std::string im = t.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return {std::stod(t.substr(0, split)), std::stod(im)};
}

S3Grid parse_grid(const std::string& s) {
    S3Grid g;
    if (std::sscanf(s.c_str(), "%d,%d,%d", &g.n_eta, &g.n_theta1, &g.n_theta2) != 3)
        throw std::invalid_argument("grid must be 'n_eta,n_theta1,n_theta2'");
    return g;
}

// Shared spec selection flags.
struct SpecFlags {
    std::string spec_json;
    std::string a;
    int n = 0;
    double lambda = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--spec", spec_json, "foliation spec as JSON");
        cmd->add_option("--a", a, "parametric parameter (complex, e.g. 0.3, 0.5+0.2i, 2/3)");
        cmd->add_option("--n", n, "discrete family index (n >= 1)");
        cmd->add_option("--lambda", lambda, "discrete homotopy parameter in [0,1]")->capture_default_str();
    }

    FoliationSpec resolve() const {
        const int given = (!spec_json.empty()) + (!a.empty()) + (n != 0);
        if (given != 1)
            throw std::invalid_argument("give exactly one of --spec, --a, --n");
        if (!spec_json.empty()) return spec_from_json(json::parse(spec_json));
        if (!a.empty()) return FoliationSpec::parametric(parse_complex(a));
        return FoliationSpec::discrete(n, lambda);
    }
};

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw numerical_error("cannot open output file " + out_path);
    os << j.dump(2) << "\n";
}

// Merge a strict JSON config into the argument list: every key becomes a
// --key option unless that option already appears on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) return args;
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file " + path);
    json cfg;
    is >> cfg;
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        args.push_back(flag);
        if (it.value().is_string())
            args.push_back(it.value().get<std::string>());
        else if (it.value().is_array()) {
            std::string csv;
            for (const auto& x : it.value()) {
                if (!csv.empty()) csv += ",";
                csv += x.dump();
            }
            args.push_back(csv);
        } else
            args.push_back(it.value().dump());
    }
    return args;
}

const char* class_letter(SeedClass c) {
    switch (c) {
        case SeedClass::attracting: return "A";
        case SeedClass::repelling: return "R";
        default: return "U";
    }
}

struct CheckRow {
    std::string name;
    double max_residual;
    double threshold;
    bool required;
};

json run_verify(const FoliationSpec& spec, int n_points, std::uint64_t seed) {
    if (n_points < 1) throw std::invalid_argument("verify: points must be >= 1");
    Rng rng(seed);
    const bool cartan_expected = spec.is_parametric() && spec.a().imag() == 0.0;
    double r_int = 0.0, r_c4 = 0.0, r_cartan = 0.0, r_ann = 0.0, r_tan = 0.0, r_mul = 0.0;
    double r_pull = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const PointS3 p = random_point(rng);
        r_int = std::max(r_int, integrability_residual(spec, p));
        const auto [c4a, c4b] = c4_residuals(spec, p);
        r_c4 = std::max({r_c4, c4a, c4b});
        r_cartan = std::max(r_cartan, cartan_residual(spec, p));
        const TangentVector y = kernel_field(spec, p);
        const Vec4 yv = y.v;
        r_ann = std::max(r_ann, std::abs(eval(omega(spec, p), std::span<const Vec4>(&yv, 1))));
        r_tan = std::max(r_tan, std::abs(dot(y.v, p.coords())));
        r_mul = std::max(r_mul, lie_multiplier(omega_field(spec), y, p).residual);
        if (spec.is_discrete() && spec.lambda() == 1.0) {
            const CoverPoint cp = phi_n(spec.n(), p);
            const Vec4 u = sigma_tangent_project(spec.n(), cp.p,
                                                 {rng.gaussian(), rng.gaussian(), rng.gaussian(),
                                                  rng.gaussian()});
            r_pull = std::max(r_pull, pullback_residual(spec.n(), cp, u));
        }
    }
    std::vector<CheckRow> rows{{"integrability", r_int, 1e-12, true},
                               {"c4_identities", r_c4, 1e-12, true},
                               {"cartan", r_cartan, 1e-12, cartan_expected},
                               {"kernel_annihilation", r_ann, 1e-12, true},
                               {"kernel_tangency", r_tan, 1e-12, true},
                               {"multiplier_residual", r_mul, 1e-9, true}};
    if (spec.is_discrete() && spec.lambda() == 1.0)
        rows.push_back({"pullback_identity", r_pull, 1e-12, true});
    json checks = json::array();
    bool all_ok = true;
    for (const auto& r : rows) {
        const bool pass = r.max_residual < r.threshold;
        std::string status = pass ? "pass" : (r.required ? "fail" : "fail_expected");
        if (r.required && !pass) all_ok = false;
        checks.push_back(json{{"check", r.name},
                              {"max_residual", r.max_residual},
                              {"threshold", r.threshold},
                              {"required", r.required},
                              {"status", status}});
    }
    return json{{"spec", to_json(spec)},
                {"points", n_points},
                {"seed", seed},
                {"checks", checks},
                {"ok", all_ok}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transversely holomorphic foliations on S^3: invariants and dynamics"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config merged with flags (flags win)");

    int exit_code = 0;
    std::string out_path;

    // ---- bott ----------------------------------------------------------
    auto* cmd_bott = app.add_subcommand("bott", "Bott invariant (closed form or quadrature)");
    SpecFlags bott_spec;
    bott_spec.attach(cmd_bott);
    std::string bott_method = "quadrature", bott_alpha = "auto", bott_grid = "48,64,64";
    std::string bott_norm = "plain";
    double bott_fd_step = 1e-5;
    int bott_threads = 1;
    cmd_bott->add_option("--method", bott_method, "closed | quadrature")->capture_default_str()
        ->check(CLI::IsMember({"closed", "quadrature"}));
    cmd_bott->add_option("--alpha", bott_alpha, "auto | analytic | generic")->capture_default_str()
        ->check(CLI::IsMember({"auto", "analytic", "generic"}));
    cmd_bott->add_option("--grid", bott_grid, "quadrature grid n_eta,n_theta1,n_theta2")->capture_default_str();
    cmd_bott->add_option("--fd-step", bott_fd_step, "central-difference step for generic alpha")->capture_default_str();
    cmd_bott->add_option("--threads", bott_threads, "worker threads (deterministic result)")->capture_default_str();
    cmd_bott->add_option("--normalization", bott_norm,
                         "plain | asuke (asuke divides by -4 pi^2)")->capture_default_str()
        ->check(CLI::IsMember({"plain", "asuke"}));
    cmd_bott->add_option("--out", out_path, "output file (default stdout)");
    cmd_bott->callback([&] {
        const FoliationSpec spec = bott_spec.resolve();
        json j{{"spec", to_json(spec)}, {"normalization", bott_norm}};
        const cplx scale = bott_norm == "asuke" ? cplx{-1.0 / (4.0 * pi * pi), 0.0}
                                                : cplx{1.0, 0.0};
        if (bott_method == "closed") {
            const cplx v = bott_closed_form(spec) * scale;
            j["bott"] = json{{"value", to_json(v)},
                             {"method", "closed_form"},
                             {"error_estimate", 0.0}};
        } else {
            AlphaSource src = AlphaSource::generic;
            if (bott_alpha == "analytic" || (bott_alpha == "auto" && spec.is_parametric()))
                src = AlphaSource::analytic;
            BottResult r =
                bott_quadrature(spec, parse_grid(bott_grid), src, bott_threads, bott_fd_step);
            r.value *= scale;
            r.error_estimate *= std::abs(scale);
            j["bott"] = to_json(r);
        }
        j["closed_form_reference"] = to_json(bott_closed_form(spec) * scale);
        emit(j, out_path);
    });

    // ---- monodromy -----------------------------------------------------
    auto* cmd_mono = app.add_subcommand("monodromy", "logarithmic monodromy of a closed leaf");
    SpecFlags mono_spec;
    mono_spec.attach(cmd_mono);
    int mono_leaf = 1;
    double mono_z0 = 1e-3, mono_tol = 1e-10;
    std::string mono_method = "numeric";
    cmd_mono->add_option("--leaf", mono_leaf, "closed leaf: 1 = S^1x{0}, 2 = {0}xS^1")->capture_default_str()
        ->check(CLI::IsMember({1, 2}));
    cmd_mono->add_option("--z0", mono_z0, "transversal seed radius")->capture_default_str();
    cmd_mono->add_option("--ode-tol", mono_tol, "trajectory accuracy")->capture_default_str();
    cmd_mono->add_option("--method", mono_method, "numeric | closed")->capture_default_str()
        ->check(CLI::IsMember({"numeric", "closed"}));
    cmd_mono->add_option("--out", out_path, "output file (default stdout)");
    cmd_mono->callback([&] {
        const FoliationSpec spec = mono_spec.resolve();
        const ClosedLeaf leaf =
            mono_leaf == 1 ? ClosedLeaf::hopf_circle_1 : ClosedLeaf::hopf_circle_2;
        json j{{"spec", to_json(spec)}};
        if (mono_method == "closed") {
            j["monodromy"] = to_json(MonodromyResult{monodromy_closed_form(spec, leaf), leaf, 0.0,
                                                     MonodromyMethod::closed_form});
        } else {
            j["monodromy"] = to_json(monodromy_numeric(spec, leaf, mono_z0, mono_tol));
            j["closed_form_reference"] = to_json(monodromy_closed_form(spec, leaf));
        }
        emit(j, out_path);
    });

    // ---- recover -------------------------------------------------------
    auto* cmd_rec = app.add_subcommand("recover", "moduli parameters from a Bott value");
    std::string rec_bott;
    cmd_rec->add_option("--bott", rec_bott, "Bott value (complex)")->required();
    cmd_rec->add_option("--out", out_path, "output file (default stdout)");
    cmd_rec->callback([&] {
        const cplx b = parse_complex(rec_bott);
        const Recovery r = recover_parameter(b);
        json j{{"bott", to_json(b)}};
        j["parametric_pair"] =
            r.parametric_pair
                ? json::array({to_json(r.parametric_pair->first), to_json(r.parametric_pair->second)})
                : json();
        j["discrete_n"] = r.discrete_n ? json(*r.discrete_n) : json();
        emit(j, out_path);
    });

    // ---- trace ---------------------------------------------------------
    auto* cmd_trace = app.add_subcommand("trace", "integrate a leaf of the kernel foliation");
    SpecFlags trace_spec;
    trace_spec.attach(cmd_trace);
    double tr_eta = pi / 4, tr_th1 = 0.3, tr_th2 = 0.9, tr_tmax = 20.0, tr_tol = 1e-9;
    double tr_lift_goal = 0.0;
    int tr_direction = 1;
    std::string tr_csv, tr_svg;
    cmd_trace->add_option("--eta", tr_eta, "seed chart angle eta in [0, pi/2]")->capture_default_str();
    cmd_trace->add_option("--theta1", tr_th1, "seed angle theta1 (radians)")->capture_default_str();
    cmd_trace->add_option("--theta2", tr_th2, "seed angle theta2 (radians)")->capture_default_str();
    cmd_trace->add_option("--tmax", tr_tmax, "time horizon")->capture_default_str();
    cmd_trace->add_option("--lift-goal", tr_lift_goal,
                          "stop when an angle lift has advanced this much (0 = run to tmax)")->capture_default_str();
    cmd_trace->add_option("--ode-tol", tr_tol, "trajectory accuracy")->capture_default_str();
    cmd_trace->add_option("--direction", tr_direction, "+1 forward, -1 backward")->capture_default_str()
        ->check(CLI::IsMember({1, -1}));
    cmd_trace->add_option("--csv", tr_csv, "CSV output path");
    cmd_trace->add_option("--svg", tr_svg, "SVG output path (three projections)");
    cmd_trace->add_option("--out", out_path, "JSON summary file (default stdout)");
    cmd_trace->callback([&] {
        const FoliationSpec spec = trace_spec.resolve();
        const PointS3 p0 = hopf_point(tr_eta, tr_th1, tr_th2);
        const LeafTrace tr =
            tr_lift_goal > 0.0
                ? trace_until_lift(spec, p0, tr_lift_goal, tr_tmax, tr_tol, tr_direction)
                : trace_leaf(spec, p0, tr_tmax, tr_tol, tr_direction);
        const std::string meta = "s3fol trace spec=" + to_json(spec).dump() +
                                 " eta=" + fmt_g17(tr_eta) + " theta1=" + fmt_g17(tr_th1) +
                                 " theta2=" + fmt_g17(tr_th2) + " ode_tol=" + fmt_g17(tr_tol);
        if (!tr_csv.empty()) {
            std::ofstream os(tr_csv);
            if (!os) throw numerical_error("cannot open " + tr_csv);
            write_trace_csv(os, tr);
        }
        if (!tr_svg.empty()) {
            std::ofstream os(tr_svg);
            if (!os) throw numerical_error("cannot open " + tr_svg);
            write_trace_svg(os, tr, meta);
        }
        double drift = 0.0;
        bool drift_defined = true;
        try {
            drift = conserved_drift(tr);
        } catch (const std::invalid_argument&) {
            drift_defined = false;
        }
        const auto& last = tr.samples.back();
        json j{{"spec", to_json(spec)},
               {"samples", tr.samples.size()},
               {"t_end", last.t},
               {"theta1_lift_end", last.theta1_lift},
               {"theta2_lift_end", last.theta2_lift},
               {"max_renorm", tr.max_renorm},
               {"conserved_drift", drift_defined ? json(drift) : json()}};
        emit(j, out_path);
    });

    // ---- petals --------------------------------------------------------
    auto* cmd_pet = app.add_subcommand("petals", "count attracting petals of the return map");
    int pet_n = 1, pet_seeds = 0, pet_iters = 24;
    double pet_radius = 0.05, pet_tol = 1e-9;
    cmd_pet->add_option("--n", pet_n, "discrete family index")->required();
    cmd_pet->add_option("--seeds", pet_seeds, "seed count (multiple of 8, >= 8n; default 8n)");
    cmd_pet->add_option("--iters", pet_iters, "return-map iterations per seed")->capture_default_str();
    cmd_pet->add_option("--radius", pet_radius, "seed circle radius")->capture_default_str();
    cmd_pet->add_option("--ode-tol", pet_tol, "trajectory accuracy")->capture_default_str();
    cmd_pet->add_option("--out", out_path, "output file (default stdout)");
    cmd_pet->callback([&] {
        const int seeds = pet_seeds > 0 ? pet_seeds : 8 * pet_n;
        const PetalCount pc = count_petals(pet_n, seeds, pet_iters, pet_tol, pet_radius);
        json cls = json::array();
        for (const auto c : pc.classes) cls.push_back(class_letter(c));
        emit(json{{"n", pet_n},
                  {"count", pc.count},
                  {"seeds", pc.n_seeds},
                  {"radius", pc.radius},
                  {"classifications", cls}},
             out_path);
    });

    // ---- seifert -------------------------------------------------------
    auto* cmd_sei = app.add_subcommand("seifert", "Seifert invariants / lens-space descent");
    std::string sei_a;
    long long sei_k1 = 0, sei_k2 = 0;
    cmd_sei->add_option("--a", sei_a, "rational parameter in (0,1), e.g. 2/3 (floats rationalized)");
    cmd_sei->add_option("--k1", sei_k1, "first orbifold multiplicity");
    cmd_sei->add_option("--k2", sei_k2, "second orbifold multiplicity");
    cmd_sei->add_option("--out", out_path, "output file (default stdout)");
    cmd_sei->callback([&] {
        if (!sei_a.empty()) {
            Rational a;
            if (sei_a.find('/') != std::string::npos) {
                const std::size_t k = sei_a.find('/');
                a = Rational(std::stoll(sei_a.substr(0, k)), std::stoll(sei_a.substr(k + 1)));
            } else {
                a = rationalize(std::stod(sei_a));
            }
            const SeifertData d = seifert_from_parameter(a);
            json j{{"type", "seifert"}, {"a", to_json(a)}, {"data", to_json(d)}};
            const ResonanceReport rr = resonance_check(a);
            j["resonance"] = json{{"n", rr.n ? json(*rr.n) : json()},
                                  {"mirror", rr.mirror ? json(*rr.mirror) : json()}};
            emit(j, out_path);
        } else if (sei_k1 > 0 && sei_k2 > 0) {
            emit(json{{"type", "lens_descent"}, {"data", to_json(descend_lens(sei_k1, sei_k2))}},
                 out_path);
        } else {
            throw std::invalid_argument("seifert: give --a or both --k1 and --k2");
        }
    });

    // ---- cover ---------------------------------------------------------
    auto* cmd_cov = app.add_subcommand("cover", "verify the branched-cover identities");
    int cov_n = 1, cov_points = 100;
    std::uint64_t cov_seed = 1;
    double cov_tol = 1e-14;
    cmd_cov->add_option("--n", cov_n, "cover degree")->required();
    cmd_cov->add_option("--points", cov_points, "sample count")->capture_default_str();
    cmd_cov->add_option("--seed", cov_seed, "random seed")->capture_default_str();
    cmd_cov->add_option("--tol", cov_tol, "zeta solver tolerance")->capture_default_str();
    cmd_cov->add_option("--out", out_path, "output file (default stdout)");
    cmd_cov->callback([&] {
        if (cov_points < 1) throw std::invalid_argument("cover: points must be >= 1");
        Rng rng(cov_seed);
        double max_pull = 0.0, max_sigma = 0.0, max_zeta_resid = 0.0;
        double zeta_min = 1e300, zeta_max = -1e300, zeta_sum = 0.0;
        for (int i = 0; i < cov_points; ++i) {
            const PointS3 p = random_point(rng);
            const double zeta = solve_zeta(cov_n, p, cov_tol);
            zeta_min = std::min(zeta_min, zeta);
            zeta_max = std::max(zeta_max, zeta);
            zeta_sum += zeta;
            const double e = std::exp(2.0 * cov_n * zeta);
            const cplx A = p.z1() + zeta * pow_int(p.z2(), cov_n);
            max_zeta_resid =
                std::max(max_zeta_resid,
                         std::abs(static_cast<double>(cov_n) * cov_n * e * std::norm(A) +
                                  e * std::pow(std::norm(p.z2()), cov_n) - 1.0));
            const CoverPoint cp = phi_n(cov_n, p, cov_tol);
            max_sigma = std::max(max_sigma, std::abs(sigma_defect(cov_n, cp.p)));
            const Vec4 u = sigma_tangent_project(cov_n, cp.p,
                                                 {rng.gaussian(), rng.gaussian(), rng.gaussian(),
                                                  rng.gaussian()});
            max_pull = std::max(max_pull, pullback_residual(cov_n, cp, u));
        }
        emit(json{{"n", cov_n},
                  {"points", cov_points},
                  {"seed", cov_seed},
                  {"max_residuals",
                   json{{"pullback", max_pull}, {"sigma", max_sigma}, {"zeta", max_zeta_resid}}},
                  {"zeta_stats", json{{"min", zeta_min},
                                      {"max", zeta_max},
                                      {"mean", zeta_sum / cov_points}}}},
             out_path);
    });

    // ---- verify --------------------------------------------------------
    auto* cmd_ver = app.add_subcommand("verify", "residual battery at random points");
    SpecFlags ver_spec;
    ver_spec.attach(cmd_ver);
    int ver_points = 1000;
    std::uint64_t ver_seed = 1;
    cmd_ver->add_option("--points", ver_points, "sample count")->capture_default_str();
    cmd_ver->add_option("--seed", ver_seed, "random seed")->capture_default_str();
    cmd_ver->add_option("--out", out_path, "output file (default stdout)");
    cmd_ver->callback([&] {
        const json report = run_verify(ver_spec.resolve(), ver_points, ver_seed);
        emit(report, out_path);
        if (!report.at("ok").get<bool>())
            throw numerical_error("verify: a required residual check failed");
    });

    // ---- plot ----------------------------------------------------------
    auto* cmd_plot = app.add_subcommand("plot", "SVG of the section-disc curve family");
    int plot_n = 1, plot_samples = 400;
    std::vector<double> plot_c1;
    std::string plot_svg;
    cmd_plot->add_option("--n", plot_n, "discrete family index")->required();
    cmd_plot->add_option("--c1", plot_c1, "curve levels (repeatable; default ladder)");
    cmd_plot->add_option("--samples", plot_samples, "angular samples per curve")->capture_default_str();
    cmd_plot->add_option("--svg", plot_svg, "SVG output path")->required();
    cmd_plot->add_option("--out", out_path, "JSON summary file (default stdout)");
    cmd_plot->callback([&] {
        if (plot_c1.empty()) plot_c1 = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0};
        std::vector<Polyline> all;
        for (const double c1 : plot_c1) {
            auto curves = petal_curves(plot_n, c1, plot_samples);
            for (auto& c : curves) all.push_back(std::move(c));
        }
        std::string meta = "s3fol plot n=" + std::to_string(plot_n) + " samples=" +
                           std::to_string(plot_samples) + " c1=";
        for (const double c : plot_c1) meta += fmt_g17(c) + ";";
        SvgWriter svg(meta);
        svg.add_panel({"section-disc curves", all, true});
        std::ofstream os(plot_svg);
        if (!os) throw numerical_error("cannot open " + plot_svg);
        svg.write(os);
        emit(json{{"n", plot_n}, {"curves", all.size()}, {"svg", plot_svg}}, out_path);
    });

    // The config file is consumed before parsing (merge_config); the
    // option is registered everywhere so it is accepted in place.
    for (CLI::App* cmd : {cmd_bott, cmd_mono, cmd_rec, cmd_trace, cmd_pet, cmd_sei, cmd_cov,
                          cmd_ver, cmd_plot})
        cmd->add_option("--config", config_path, "JSON config merged with flags (flags win)");

    // ---- parse and dispatch --------------------------------------------
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help() << std::endl;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
