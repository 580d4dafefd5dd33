#include "equivapprox/pipeline.hpp"

#include <doctest.h>

using namespace eqa;

namespace {

const std::filesystem::path kFixtures = EQUIVAPPROX_FIXTURE_DIR;

}  // namespace

TEST_CASE("scalars from JSON are exact") {
    CHECK(scalar_from_json(json("3/9"), "x") == frac(1, 3));
    CHECK(scalar_from_json(json(-4), "x") == -4);
    CHECK_THROWS_AS(scalar_from_json(json(0.5), "x"), InputError);
    CHECK_THROWS_AS(scalar_from_json(json("1/0"), "x"), InputError);
    CHECK(to_json(frac(-2, 6)) == json("-1/3"));
}

TEST_CASE("polynomials from JSON") {
    auto p = polynomial_from_json(json::parse(R"({"terms": [{"exp": [2, 0], "coef": "1"}, {"exp": [0, 1], "coef": "-3/2"}]})"), 2, "p");
    CHECK(p.eval({2, 2}) == 1);
    auto q = polynomial_from_json(json::parse(R"({"affine": [1, 0, -1]})"), 2, "q");
    CHECK(q.eval({5, 1}) == 0);
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"affine": [1, 0]})"), 2, "q"), InputError);
}

TEST_CASE("sign strings round trip") {
    CHECK(signs_from_string("-0+", "s") == std::vector<int>{-1, 0, 1});
    CHECK(sign_string({1, 0, -1}) == "+0-");
    CHECK_THROWS_AS(signs_from_string("+x", "s"), InputError);
}

TEST_CASE("formula trees parse and evaluate") {
    auto in = parse_formula(json::parse(R"({
        "nvars": 1,
        "polynomials": [{"affine": [1, 1]}, {"affine": [1, -1]}],
        "formula": {"op": "and", "args": [{"atom": 0, "rel": ">="}, {"op": "not", "args": [{"atom": 1, "rel": "<"}]}]}
    })"));
    CHECK(in.formula.eval({0}));
    CHECK(in.formula.eval({1}));
    CHECK_FALSE(in.formula.eval({2}));
    CHECK_THROWS_AS(parse_formula(json::parse(R"({"nvars": 1, "polynomials": [], "formula": {"atom": 0, "rel": ">="}})")),
                    InputError);
}

TEST_CASE("params round trip and reject bad orderings") {
    ApproxParams p = parse_params(load_json(kFixtures / "p_prime" / "params.json"));
    CHECK(p.m == 1);
    CHECK(parse_params(to_json(p)).eps == p.eps);
    auto j = to_json(p);
    j["eps"][0] = "1/2";
    CHECK_THROWS_AS(parse_params(j), InputError);
}

TEST_CASE("missing files are input errors") {
    CHECK_THROWS_AS(load_json(kFixtures / "no_such_file.json"), InputError);
    PipelineConfig config;
    config.mode = Mode::Homology;
    config.complex = kFixtures / "no_such_file.json";
    auto rep = run_pipeline(config);
    CHECK(rep.exit_code() == 2);
    CHECK(rep.partial);
}

TEST_CASE("every fixture loads") {
    for (const auto& name : {"disk", "hexagon", "diamond_interior", "diamond_boundary", "square_boundary", "three_diamonds",
                             "reflection_1d", "p_prime"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_fixture(kFixtures / name));
    }
}

TEST_CASE("homology mode on the square boundary") {
    PipelineConfig config;
    config.mode = Mode::Homology;
    const auto dir = kFixtures / "square_boundary";
    config.group = dir / "group.json";
    config.formula = dir / "formula.json";
    config.complex = dir / "complex.json";
    config.params = dir / "params.json";
    auto rep = run_pipeline(config);
    INFO(rep.error);
    CHECK(rep.exit_code() == 0);
    auto j = rep.to_json();
    CHECK(j["passed"] == true);
    CHECK(j.contains("timing"));
    CHECK(j["betti_S"][0] == 1);
    CHECK(j["betti_S"][1] == 1);
}

TEST_CASE("approximate mode counts P' and the pieces of T") {
    PipelineConfig config;
    config.mode = Mode::Approximate;
    config.formula = kFixtures / "p_prime" / "formula.json";
    config.params = kFixtures / "p_prime" / "params.json";
    auto rep = run_pipeline(config);
    INFO(rep.error);
    CHECK(rep.exit_code() == 0);
    auto j = rep.to_json();
    CHECK(j["p_prime"]["emitted"] == 16);
    CHECK(j["p_prime"]["quoted_figure"] == 8);
}

TEST_CASE("mode names") {
    for (auto m : {Mode::Triangulate, Mode::Approximate, Mode::Homology, Mode::VerifyPipeline})
        CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mode("bogus"), InputError);
}

TEST_CASE("reports are deterministic apart from timing") {
    PipelineConfig config;
    config.mode = Mode::Homology;
    const auto dir = kFixtures / "diamond_boundary";
    config.group = dir / "group.json";
    config.formula = dir / "formula.json";
    config.complex = dir / "complex.json";
    config.params = dir / "params.json";
    auto a = run_pipeline(config).to_json(), b = run_pipeline(config).to_json();
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("a failed check maps to exit code 1 and keeps its witness") {
    Report rep;
    rep.check("multiplicity table", false, "m[1][(3)] = 2 exceeds the bound");
    CHECK(rep.exit_code() == 1);
    auto j = rep.to_json();
    CHECK(j["checks"][0]["witness"] == "m[1][(3)] = 2 exceeds the bound");
    rep.input_error = true;
    CHECK(rep.exit_code() == 2);
}
