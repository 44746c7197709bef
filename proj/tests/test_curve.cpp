#include <doctest.h>

#include "abeljac/errors.hpp"
#include "abeljac/periods.hpp"
#include "test_support.hpp"

using namespace abeljac;
using testsup::simpson;

namespace {

std::vector<Complex> coeffs_x3_minus_x() { return {0.0, -1.0, 0.0, 1.0}; }

} // namespace

TEST_CASE("new_curve validates and orders the branch points") {
    const auto curve = new_curve(coeffs_x3_minus_x());
    CHECK(curve.genus == 1);
    CHECK(curve.degree == 3);
    REQUIRE(curve.branch_points.size() == 3);
    CHECK(std::abs(curve.branch_points[0] - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(curve.branch_points[1]) < 1e-12);
    CHECK(std::abs(curve.branch_points[2] - Complex(1.0, 0.0)) < 1e-12);
    CHECK(curve.discriminant_margin == doctest::Approx(1.0));
}

TEST_CASE("new_curve rejects unsupported polynomials") {
    CHECK_THROWS_AS(new_curve({1.0, 0.0, 0.0, 0.0, 1.0}), EvenDegreeError); // x^4 + 1
    CHECK_THROWS_AS(new_curve({0.0, 0.0, 0.0, 1.0}), NearDegenerateError);  // x^3
    CHECK_THROWS_AS(new_curve({1.0, 1.0}), DegreeTooSmallError);            // x + 1
    CHECK_THROWS_AS(new_curve({1.0, 1.0, 0.0, 0.0}), LeadingZeroError);
    CHECK_THROWS_AS(new_curve({}), InputError);
}

TEST_CASE("genus follows the degree") {
    CHECK(genus(new_curve({0.0, -1.0, 0.0, 1.0})) == 1);
    CHECK(genus(new_curve({-1.0, 0.0, 0.0, 0.0, 0.0, 1.0})) == 2); // x^5 - 1
    Rng rng(42);
    CHECK(genus(sample_curve(4, rng)) == 4);
}

TEST_CASE("branch point ordering is deterministic") {
    Rng rng(7);
    for (int n = 0; n < 5; ++n) {
        const auto curve = sample_curve(3, rng);
        const auto again = new_curve(curve.coeffs);
        REQUIRE(again.branch_points.size() == curve.branch_points.size());
        for (std::size_t i = 0; i < curve.branch_points.size(); ++i)
            CHECK(std::abs(again.branch_points[i] - curve.branch_points[i]) < 1e-12);
    }
}

TEST_CASE("holomorphic basis has g elements") {
    Rng rng(3);
    for (int g = 1; g <= 4; ++g) CHECK(holomorphic_basis(sample_curve(g, rng)).size == g);
}

TEST_CASE("evaluate_differential at an ordinary point") {
    const auto curve = new_curve(coeffs_x3_minus_x());
    // P = (2, +sqrt(6)): f(2) = 6
    const auto p = finite_point(curve, 2.0, +1);
    CHECK(std::abs(evaluate_differential(curve, 1, p) - 1.0 / std::sqrt(6.0)) < 1e-14);
}

TEST_CASE("evaluate_differential at a branch point against the chart-integral oracle") {
    const auto curve = new_curve(coeffs_x3_minus_x());
    const auto e1 = branch_point_at(curve, 1.0);
    // g_e(x) = x^2 + x at e = 1 gives 2, so the chart value is 2/sqrt(2)
    const Complex value = evaluate_differential(curve, 1, e1);
    CHECK(std::abs(value - 2.0 / std::sqrt(2.0)) < 1e-13);

    // oracle: integral of omega_1 over the chart segment t in [0, h] divided
    // by h, with x = e + t^2 and y = t * sqrt(g_e(x)) pointwise
    const double h = 1e-3;
    const Complex e = 1.0;
    const auto integrand = [&](double t) -> Complex {
        const Complex x = e + t * t;
        const Complex ge = curve.f_cofactor(x, e);
        return 2.0 / std::sqrt(ge); // x^0 * (dx/dt) / y = 2t / (t sqrt(g_e))
    };
    const Complex oracle = simpson(integrand, 0.0, h, 64) / h;
    CHECK(std::abs(value - oracle) < 1e-5);
}

TEST_CASE("evaluate_differential at infinity") {
    const auto curve = new_curve({-1.0, 0.0, 0.0, 0.0, 0.0, 1.0}); // x^5 - 1, g = 2
    CHECK(std::abs(evaluate_differential(curve, 2, infinity_point()) - Complex(-2.0, 0.0)) <
          1e-14);
    CHECK(std::abs(evaluate_differential(curve, 1, infinity_point())) == 0.0);
}

TEST_CASE("differential values are odd under the involution") {
    Rng rng(11);
    for (int g = 1; g <= 3; ++g) {
        const auto curve = sample_curve(g, rng);
        for (int n = 0; n < 5; ++n) {
            const auto p = sample_point(curve, rng);
            for (int k = 1; k <= g; ++k) {
                const Complex a = evaluate_differential(curve, k, p);
                const Complex b = evaluate_differential(curve, k, involution(p));
                CHECK(std::abs(a + b) < 1e-12 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("involution fixes branch points and infinity") {
    const auto curve = new_curve(coeffs_x3_minus_x());
    const auto p = finite_point(curve, 2.0, +1);
    CHECK(involution(p).sheet == -1);
    CHECK(involution(involution(p)).sheet == +1);
    const auto e = branch_point_at(curve, 0.0);
    CHECK(same_point(involution(e), e));
    CHECK(same_point(involution(infinity_point()), infinity_point()));
}

TEST_CASE("divisor_of_function on the stated examples") {
    const auto curve = new_curve(coeffs_x3_minus_x());

    SUBCASE("x - 2") {
        const auto d = divisor_of_function(curve, RationalFunctionSpec::linear(2.0));
        CHECK(d.degree() == 0);
        CHECK(d.entries.size() == 3);
        CHECK(d.multiplicity_at_infinity() == -2);
    }
    SUBCASE("y") {
        const auto d = divisor_of_function(curve, RationalFunctionSpec::ycoord());
        CHECK(d.degree() == 0);
        CHECK(d.multiplicity_at_infinity() == -3);
        int branch_entries = 0;
        for (const auto& e : d.entries)
            if (e.point.is_branch()) {
                CHECK(e.multiplicity == 1);
                ++branch_entries;
            }
        CHECK(branch_entries == 3);
    }
    SUBCASE("(x - 2)/(x - 3): infinity cancels") {
        auto h = RationalFunctionSpec::linear(2.0, +1);
        h.times(RationalFunctionSpec::linear(3.0, -1));
        const auto d = divisor_of_function(curve, h);
        CHECK(d.degree() == 0);
        CHECK(d.multiplicity_at_infinity() == 0);
        CHECK(d.entries.size() == 4);
    }
    SUBCASE("branch-point factor x - e") {
        const auto d = divisor_of_function(curve, RationalFunctionSpec::linear(1.0));
        CHECK(d.degree() == 0);
        REQUIRE(d.entries.size() == 2);
        // 2*(e,0) - 2*inf
        for (const auto& e : d.entries)
            CHECK((e.point.is_branch() ? e.multiplicity == 2 : e.multiplicity == -2));
    }
}

TEST_CASE("divisors of products add and have degree zero") {
    Rng rng(19);
    for (int g = 1; g <= 3; ++g) {
        const auto curve = sample_curve(g, rng);
        const auto family = principal_family(curve, 8, rng);
        for (const auto& h : family) CHECK(divisor_of_function(curve, h).degree() == 0);

        auto h1 = family[0];
        auto h2 = family[1];
        auto product = h1;
        product.times(h2);
        Divisor sum = divisor_of_function(curve, h1);
        sum.add(divisor_of_function(curve, h2));
        const Divisor direct = divisor_of_function(curve, product);
        REQUIRE(sum.entries.size() == direct.entries.size());
        for (std::size_t i = 0; i < sum.entries.size(); ++i) {
            CHECK(same_point(sum.entries[i].point, direct.entries[i].point, 1e-9));
            CHECK(sum.entries[i].multiplicity == direct.entries[i].multiplicity);
        }
    }
}

TEST_CASE("g differentials at g generic points form an invertible matrix") {
    Rng rng(23);
    for (int g = 1; g <= 4; ++g) {
        const auto curve = sample_curve(g, rng);
        Eigen::MatrixXcd M(g, g);
        for (int j = 0; j < g; ++j) {
            const auto p = sample_point(curve, rng);
            for (int k = 1; k <= g; ++k) M(k - 1, j) = evaluate_differential(curve, k, p);
        }
        CHECK(condition_number(M) < 1e8);
    }
}

TEST_CASE("points off the curve are rejected") {
    const auto curve = new_curve(coeffs_x3_minus_x());
    CHECK_THROWS_AS(branch_point_at(curve, Complex(0.5, 0.5)), NotOnCurveError);
    CHECK_THROWS_AS(finite_point(curve, 1.0, +1), NotOnCurveError); // on a branch point
    CHECK_THROWS_AS(finite_point(curve, 2.0, 3), InputError);
    CHECK_THROWS_AS(evaluate_differential(curve, 2, finite_point(curve, 2.0, 1)), InputError);
}
