#include "s3fol/serialize.hpp"

#include <json.hpp>

#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(S3FOL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("bott subcommand matches the closed form", "[cli]") {
    const CliRun r = run_cli("bott --a 0.3 --method quadrature");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    const double re = j["bott"]["value"][0].get<double>();
    const double im = j["bott"]["value"][1].get<double>();
    const double expect = -4.0 * s3fol::pi * s3fol::pi / 0.21;
    REQUIRE(std::abs(re - expect) < 1e-8 * std::abs(expect));
    REQUIRE(std::abs(im) < 1e-8 * std::abs(expect));
    REQUIRE(j["bott"]["method"] == "quadrature_analytic_alpha");

    const CliRun asuke = run_cli("bott --a 0.3 --method closed --normalization asuke");
    REQUIRE(asuke.exit_code == 0);
    const json ja = json::parse(asuke.out);
    REQUIRE(std::abs(ja["bott"]["value"][0].get<double>() - 1.0 / 0.21) < 1e-10);
}

TEST_CASE("seifert subcommand emits the integer data", "[cli]") {
    const CliRun r = run_cli("seifert --a 2/3");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["data"]["p1"] == 2);
    REQUIRE(j["data"]["p2"] == 1);
    REQUIRE(j["data"]["b"] == 0);
    REQUIRE(j["resonance"]["n"] == 2);

    const CliRun lens = run_cli("seifert --k1 2 --k2 4");
    REQUIRE(lens.exit_code == 0);
    const json jl = json::parse(lens.out);
    REQUIRE(jl["data"]["m"] == 6);
    REQUIRE(jl["data"]["multiplicities"][0] == 2);
    REQUIRE(jl["data"]["multiplicities"][1] == 4);
}

TEST_CASE("verify subcommand passes on the discrete family", "[cli]") {
    const CliRun r = run_cli("verify --spec '{\"family\":\"discrete\",\"n\":2,\"lambda\":1}' --points 1000");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["ok"] == true);
    for (const auto& c : j["checks"]) {
        if (c["required"] == true) {
            REQUIRE(c["status"] == "pass");
            REQUIRE(c["max_residual"].get<double>() < 1e-10);
        }
    }
}

TEST_CASE("verify reports the expected informational Cartan failure", "[cli]") {
    const CliRun r = run_cli("verify --a 2+1i --points 200");
    REQUIRE(r.exit_code == 0); // informational failure is not an error
    const json j = json::parse(r.out);
    bool saw_info = false;
    for (const auto& c : j["checks"])
        if (c["check"] == "cartan") {
            REQUIRE(c["status"] == "fail_expected");
            saw_info = true;
        }
    REQUIRE(saw_info);

    const CliRun real_a = run_cli("verify --a 1/3 --points 200");
    REQUIRE(real_a.exit_code == 0);
    for (const auto& c : json::parse(real_a.out)["checks"])
        if (c["check"] == "cartan") REQUIRE(c["status"] == "pass");
}

TEST_CASE("monodromy and recover subcommands", "[cli]") {
    const CliRun r = run_cli("monodromy --a 1/2 --leaf 1 --z0 1e-3 --ode-tol 1e-10");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(std::abs(j["monodromy"]["value"][0].get<double>()) < 1e-4);
    REQUIRE(std::abs(j["monodromy"]["value"][1].get<double>() - 2.0 * s3fol::pi) < 1e-4);

    const CliRun rec = run_cli("recover --bott=-157.91367041742973");
    REQUIRE(rec.exit_code == 0);
    const json jr = json::parse(rec.out);
    REQUIRE(jr["discrete_n"] == 1);
    REQUIRE(std::abs(jr["parametric_pair"][0][0].get<double>() - 0.5) < 1e-10);
}

TEST_CASE("trace emits CSV and SVG with the documented layout", "[cli]") {
    const CliRun r = run_cli(
        "trace --a 0.5+0.2i --tmax 4 --ode-tol 1e-9 --csv /tmp/s3fol_test_trace.csv "
        "--svg /tmp/s3fol_test_trace.svg");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["samples"].get<int>() > 10);
    REQUIRE(j["conserved_drift"].get<double>() < 1e-8);

    std::ifstream csv("/tmp/s3fol_test_trace.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    REQUIRE(header == "t,x1,y1,x2,y2,theta1_lift,theta2_lift,drift");
    std::string row;
    std::getline(csv, row);
    double cols[8];
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &cols[0], &cols[1],
                        &cols[2], &cols[3], &cols[4], &cols[5], &cols[6], &cols[7]) == 8);

    std::ifstream svg("/tmp/s3fol_test_trace.svg");
    REQUIRE(svg.good());
    std::string first, second;
    std::getline(svg, first);
    std::getline(svg, second);
    REQUIRE(first.rfind("<?xml", 0) == 0);
    REQUIRE(second.find("s3fol trace") != std::string::npos); // regenerating metadata
}

TEST_CASE("petals and cover subcommands", "[cli]") {
    const CliRun r = run_cli("petals --n 2 --seeds 16 --iters 16");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["count"] == 2);
    REQUIRE(j["classifications"].size() == 16);

    const CliRun c = run_cli("cover --n 2 --points 100 --seed 42");
    REQUIRE(c.exit_code == 0);
    const json jc = json::parse(c.out);
    REQUIRE(jc["max_residuals"]["pullback"].get<double>() < 1e-10);
    REQUIRE(jc["max_residuals"]["sigma"].get<double>() < 1e-10);
    REQUIRE(jc["max_residuals"]["zeta"].get<double>() < 1e-12);
}

TEST_CASE("exit codes distinguish validation from numerical failure", "[cli]") {
    REQUIRE(run_cli("bott --a 0.3 --no-such-flag").exit_code == 2);
    REQUIRE(run_cli("bott --a 2").exit_code == 2);       // outside the parameter set
    REQUIRE(run_cli("nonsense").exit_code == 2);          // unknown subcommand
    REQUIRE(run_cli("seifert --a 4/2").exit_code == 2);   // not in (0,1)
    REQUIRE(run_cli("bott --a 0.3 --grid 4,4,4").exit_code == 2);
}

TEST_CASE("config file merges under explicit flags", "[cli]") {
    {
        std::ofstream cfg("/tmp/s3fol_test_cfg.json");
        cfg << R"({"a": "0.3", "method": "closed"})";
    }
    const CliRun base = run_cli("bott --config /tmp/s3fol_test_cfg.json");
    REQUIRE(base.exit_code == 0);
    const json jb = json::parse(base.out);
    REQUIRE(jb["spec"]["a"][0].get<double>() == Approx(0.3));
    REQUIRE(jb["bott"]["method"] == "closed_form");

    // explicit flag wins over the config value
    const CliRun over = run_cli("bott --a 0.4 --config /tmp/s3fol_test_cfg.json");
    REQUIRE(over.exit_code == 0);
    REQUIRE(json::parse(over.out)["spec"]["a"][0].get<double>() == Approx(0.4));

    // unknown keys are rejected (strict parsing)
    {
        std::ofstream cfg("/tmp/s3fol_test_cfg_bad.json");
        cfg << R"({"a": "0.3", "no_such_key": 1})";
    }
    REQUIRE(run_cli("bott --config /tmp/s3fol_test_cfg_bad.json").exit_code == 2);
}

TEST_CASE("output is byte-identical for identical argv and seed", "[cli]") {
    const std::string args = "verify --a 0.5+0.2i --points 300 --seed 7";
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    const CliRun c = run_cli("cover --n 3 --points 64 --seed 11");
    const CliRun d = run_cli("cover --n 3 --points 64 --seed 11");
    REQUIRE(c.out == d.out);
}

TEST_CASE("JSON wire formats round-trip", "[cli]") {
    using namespace s3fol;
    SECTION("form values serialize over the fixed basis order") {
        FormValue w(2);
        w[0] = cplx{1.0, -2.0};
        w[5] = cplx{0.25, 0.0};
        const json j = to_json(w);
        REQUIRE(j["degree"] == 2);
        REQUIRE(j["coefficients"].size() == 6);
        REQUIRE(j["coefficients"][0][0].get<double>() == 1.0);
        REQUIRE(j["coefficients"][0][1].get<double>() == -2.0);
        REQUIRE(j["coefficients"][5][0].get<double>() == 0.25);
    }
    SECTION("foliation specs round-trip and reject unknown keys") {
        const FoliationSpec p = FoliationSpec::parametric({0.5, 0.2});
        const FoliationSpec p2 = spec_from_json(to_json(p));
        REQUIRE(p2.is_parametric());
        REQUIRE(p2.a() == cplx{0.5, 0.2});
        const FoliationSpec d = FoliationSpec::discrete(3, 0.25);
        const FoliationSpec d2 = spec_from_json(to_json(d));
        REQUIRE(d2.is_discrete());
        REQUIRE(d2.n() == 3);
        REQUIRE(d2.lambda() == 0.25);
        REQUIRE_THROWS_AS(spec_from_json(json::parse(R"({"family":"discrete","n":2,"zeta":1})")),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(spec_from_json(json::parse(R"({"family":"octonionic"})")),
                          std::invalid_argument);
    }
}

TEST_CASE("remaining verify fixtures from the interface contract", "[cli]") {
    const CliRun n1 = run_cli("verify --spec '{\"family\":\"discrete\",\"n\":1,\"lambda\":1}' --points 300");
    REQUIRE(n1.exit_code == 0);
    for (const auto& c : json::parse(n1.out)["checks"])
        if (c["check"] == "integrability") REQUIRE(c["status"] == "pass");
}

TEST_CASE("non-return inside the horizon exits with the numerical code", "[cli]") {
    REQUIRE(run_cli("trace --a 0.5 --lift-goal 700 --tmax 1").exit_code == 3);
}
