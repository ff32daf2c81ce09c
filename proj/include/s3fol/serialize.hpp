#pragma once

#include "s3fol/bott.hpp"
#include "s3fol/foliation.hpp"
#include "s3fol/monodromy.hpp"
#include "s3fol/seifert.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace s3fol {

using json = nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const FormValue& w) {
    json coeffs = json::array();
    for (int i = 0; i < w.size(); ++i) coeffs.push_back(to_json(w[i]));
    return json{{"degree", w.degree()}, {"coefficients", coeffs}};
}

inline json to_json(const FoliationSpec& s) {
    if (s.is_parametric()) return json{{"family", "parametric"}, {"a", to_json(s.a())}};
    return json{{"family", "discrete"}, {"n", s.n()}, {"lambda", s.lambda()}};
}

namespace detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument(what + ": unknown key '" + it.key() + "'");
}

} // namespace detail

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("complex value must be a number or [re, im]");
}

inline FoliationSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("spec: expected an object with a 'family' key");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "parametric") {
        detail::require_keys(j, {"family", "a"}, "spec");
        return FoliationSpec::parametric(complex_from_json(j.at("a")));
    }
    if (fam == "discrete") {
        detail::require_keys(j, {"family", "n", "lambda"}, "spec");
        const int n = j.at("n").get<int>();
        const double lambda = j.contains("lambda") ? j.at("lambda").get<double>() : 1.0;
        return FoliationSpec::discrete(n, lambda);
    }
    throw std::invalid_argument("spec: family must be 'parametric' or 'discrete'");
}

inline json to_json(const Rational& r) { return json{{"num", r.num}, {"den", r.den}}; }

inline json to_json(const SeifertData& d) {
    return json{{"genus", d.genus}, {"p1", d.p1},   {"p2", d.p2}, {"q1_prime", d.q1p},
                {"q2_prime", d.q2p}, {"m1", d.m1},  {"m2", d.m2}, {"q1", d.q1},
                {"q2", d.q2},        {"b", d.b}};
}

inline json to_json(const LensDescent& d) {
    return json{{"k1", d.k1},
                {"k2", d.k2},
                {"p1", d.p1},
                {"p2", d.p2},
                {"m", d.m},
                {"regular_fiber_len_2pi", to_json(d.regular_fiber_len)},
                {"multiple_fiber_lens_2pi",
                 json::array({to_json(d.multiple_fiber_lens[0]), to_json(d.multiple_fiber_lens[1])})},
                {"multiplicities", json::array({d.multiplicities[0], d.multiplicities[1]})},
                {"theta_realized", d.theta_realized}};
}

inline const char* method_name(BottMethod m) {
    switch (m) {
        case BottMethod::closed_form: return "closed_form";
        case BottMethod::quadrature_analytic_alpha: return "quadrature_analytic_alpha";
        default: return "quadrature_generic_alpha";
    }
}

inline json to_json(const BottResult& r) {
    return json{{"value", to_json(r.value)},
                {"method", method_name(r.method)},
                {"grid", json::array({r.grid.n_eta, r.grid.n_theta1, r.grid.n_theta2})},
                {"error_estimate", r.error_estimate}};
}

inline json to_json(const MonodromyResult& r) {
    return json{{"value", to_json(r.log_monodromy)},
                {"leaf", r.leaf == ClosedLeaf::hopf_circle_1 ? 1 : 2},
                {"z0", r.z0},
                {"method", r.method == MonodromyMethod::numeric ? "numeric" : "closed_form"}};
}

} // namespace s3fol
