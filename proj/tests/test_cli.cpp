#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "abeljac/errors.hpp"
#include "abeljac/jsonio.hpp"
#include "abeljac/polyparse.hpp"
#include "test_support.hpp"

using namespace abeljac;

TEST_CASE("polynomial parser") {
    SUBCASE("x^3 - x") {
        const auto c = parse_polynomial("x^3 - x");
        REQUIRE(c.size() == 4);
        CHECK(c[0] == Complex(0.0, 0.0));
        CHECK(c[1] == Complex(-1.0, 0.0));
        CHECK(c[2] == Complex(0.0, 0.0));
        CHECK(c[3] == Complex(1.0, 0.0));
    }
    SUBCASE("whitespace and signs") {
        const auto c = parse_polynomial("  -2x^2+ 0.5 x -1.5i ");
        REQUIRE(c.size() == 3);
        CHECK(c[0] == Complex(0.0, -1.5));
        CHECK(c[1] == Complex(0.5, 0.0));
        CHECK(c[2] == Complex(-2.0, 0.0));
    }
    SUBCASE("imaginary unit alone and with powers") {
        const auto c = parse_polynomial("i*x^2 + i");
        REQUIRE(c.size() == 3);
        CHECK(c[0] == Complex(0.0, 1.0));
        CHECK(c[2] == Complex(0.0, 1.0));
    }
    SUBCASE("repeated powers accumulate") {
        const auto c = parse_polynomial("x + x");
        REQUIRE(c.size() == 2);
        CHECK(c[1] == Complex(2.0, 0.0));
    }
    SUBCASE("malformed inputs fail with a position") {
        CHECK_THROWS_AS(parse_polynomial(""), InputError);
        CHECK_THROWS_AS(parse_polynomial("x^"), InputError);
        CHECK_THROWS_AS(parse_polynomial("2 +"), InputError);
        CHECK_THROWS_AS(parse_polynomial("x + y"), InputError);
        try {
            parse_polynomial("x ? 1");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("position") != std::string::npos);
        }
    }
}

TEST_CASE("JSON round trips") {
    const auto curve = new_curve(parse_polynomial("x^5 - 1"));

    SUBCASE("curve coefficients") {
        const auto parsed = coeffs_from_json(curve_to_json(curve));
        REQUIRE(parsed.size() == curve.coeffs.size());
        for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == curve.coeffs[i]);
    }
    SUBCASE("points of every kind") {
        Rng rng(179);
        for (int n = 0; n < 10; ++n) {
            const auto p = sample_point(curve, rng);
            CHECK(same_point(point_from_json(curve, point_to_json(p)), p, 1e-15));
        }
        CHECK(point_from_json(curve, point_to_json(infinity_point())).is_infinity());
        const auto e = branch_point_index(curve, 2);
        CHECK(same_point(point_from_json(curve, point_to_json(e)), e, 1e-12));
    }
    SUBCASE("divisors") {
        Rng rng(181);
        const auto family = principal_family(curve, 5, rng);
        for (const auto& h : family) {
            const auto d = divisor_of_function(curve, h);
            const auto round = divisor_from_json(curve, divisor_to_json(d));
            REQUIRE(round.entries.size() == d.entries.size());
            CHECK(round.degree() == d.degree());
            for (std::size_t i = 0; i < d.entries.size(); ++i) {
                CHECK(same_point(round.entries[i].point, d.entries[i].point, 1e-12));
                CHECK(round.entries[i].multiplicity == d.entries[i].multiplicity);
            }
        }
    }
    SUBCASE("malformed JSON is an input error") {
        CHECK_THROWS_AS(coeffs_from_json(json::parse("{}")), InputError);
        CHECK_THROWS_AS(point_from_json(curve, json::parse("{\"kind\": \"nowhere\"}")),
                        InputError);
        CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), InputError);
    }
    SUBCASE("debug serializations carry the documented shapes") {
        const Pipeline pipe = build_pipeline(curve.coeffs);
        const auto path = plan_path(curve, branch_point_index(curve, 0),
                                    branch_point_index(curve, 1));
        const json pj = path_to_json(path);
        CHECK(pj.contains("segments"));
        CHECK(pj["segments"].size() == path.segments.size());

        const json bj = basis_to_json(pipe.homology);
        CHECK(bj["loop_words"].size() == 4);
        CHECK(bj["transform"].size() == 4);

        const json lj = lattice_to_json(pipe.lattice);
        CHECK(lj["generators"].size() == 4);
    }
}

#ifdef ABELJAC_CLI_PATH

namespace {

int run_cli(const std::string& args, const std::string& out_file) {
    const std::string cmd =
        std::string(ABELJAC_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("CLI exit codes") {
    CHECK(run_cli("periods --curve \"x^3 - x\"", "/tmp/abeljac_t1.json") == 0);
    CHECK(run_cli("periods --curve \"x^4 - 1\"", "/tmp/abeljac_t2.json") == 1); // even degree
    CHECK(run_cli("periods --curve \"x^3\"", "/tmp/abeljac_t3.json") == 1);     // degenerate
    CHECK(run_cli("abel --curve \"x^3 - x\" --divisor "
                  "'{\"entries\":[{\"point\":{\"x\":[2,0],\"sheet\":1},\"mult\":1}]}'",
                  "/tmp/abeljac_t4.json") == 1); // degree 1
    CHECK(run_cli("invert --curve \"x^5 - 1\" --target '[[0,0]]'", "/tmp/abeljac_t5.json") ==
          1); // dimension mismatch

    // two roots at distance 1e-12: (x^2 - 1)(x - 1 - 1e-12)
    {
        std::ofstream f("/tmp/abeljac_degen.json");
        f.precision(17);
        f << "{\"coeffs\": [[" << 1.0 + 1e-12 << ",0], [-1,0], [" << -(1.0 + 1e-12)
          << ",0], [1,0]]}";
    }
    CHECK(run_cli("verify --curve /tmp/abeljac_degen.json", "/tmp/abeljac_t6.json") == 1);
}

TEST_CASE("CLI seed changes the samples but not the verdict") {
    REQUIRE(run_cli("verify --curve \"x^5 - 1\" --seed 1", "/tmp/abeljac_s1.json") == 0);
    REQUIRE(run_cli("verify --curve \"x^5 - 1\" --seed 2", "/tmp/abeljac_s2.json") == 0);
    std::ifstream in1("/tmp/abeljac_s1.json"), in2("/tmp/abeljac_s2.json");
    json r1, r2;
    in1 >> r1;
    in2 >> r2;
    CHECK(r1["pass"].get<bool>());
    CHECK(r2["pass"].get<bool>());
    // sampled divisors differ, so the measured maxima differ
    CHECK(r1["abel"]["max_distance"].get<double>() != r2["abel"]["max_distance"].get<double>());
}

TEST_CASE("CLI invert converges on a small seeded target") {
    REQUIRE(run_cli("invert --curve \"x^5 - 1\" --seed 3 --target '[[0.01,0.004],[-0.006,0.01]]'",
                    "/tmp/abeljac_inv2.json") == 0);
    std::ifstream in("/tmp/abeljac_inv2.json");
    json out;
    in >> out;
    CHECK(out["residual"].get<double>() < 1e-8);
    CHECK(out["iterations"].get<int>() <= 20);
    CHECK(out["forward_distance"].get<double>() < 1e-8);
}

TEST_CASE("CLI abel with an empty divisor returns zero") {
    REQUIRE(run_cli("abel --curve \"x^3 - x\"", "/tmp/abeljac_abel0.json") == 0);
    std::ifstream in("/tmp/abeljac_abel0.json");
    json out;
    in >> out;
    for (const auto& coord : out["reduced"]) {
        CHECK(std::abs(coord[0].get<double>()) < 1e-12);
        CHECK(std::abs(coord[1].get<double>()) < 1e-12);
    }
}

TEST_CASE("CLI abel reports a principal divisor as a lattice point") {
    REQUIRE(run_cli("abel --curve \"x^3 - x\" --divisor "
                    "'{\"entries\":[{\"point\":{\"x\":[2,0],\"sheet\":1},\"mult\":1},"
                    "{\"point\":{\"x\":[2,0],\"sheet\":-1},\"mult\":1},"
                    "{\"point\":{\"kind\":\"infinity\"},\"mult\":-2}]}'",
                    "/tmp/abeljac_abel.json") == 0);
    std::ifstream in("/tmp/abeljac_abel.json");
    json out;
    in >> out;
    CHECK(out["lattice_distance"].get<double>() < 1e-7);
}

TEST_CASE("CLI invert on the zero target returns the base tuple") {
    REQUIRE(run_cli("invert --curve \"x^5 - 1\"", "/tmp/abeljac_inv.json") == 0);
    std::ifstream in("/tmp/abeljac_inv.json");
    json out;
    in >> out;
    CHECK(out["iterations"].get<int>() == 0);
    CHECK(out["residual"].get<double>() < 1e-8);
    CHECK(out["forward_distance"].get<double>() < 1e-8);
}

#endif
