#include <doctest.h>

#include "abeljac/errors.hpp"
#include "test_support.hpp"

using namespace abeljac;

namespace {

HyperellipticCurve lemniscatic() { return new_curve({0.0, -1.0, 0.0, 1.0}); } // x^3 - x

} // namespace

TEST_CASE("plan_path basics") {
    const auto curve = lemniscatic();

    SUBCASE("same point gives the empty path") {
        const auto p = finite_point(curve, Complex(2.0, 1.0), +1);
        CHECK(plan_path(curve, p, p).empty());
    }
    SUBCASE("a clear corridor is a single straight segment") {
        const auto a = finite_point(curve, Complex(-2.0, 1.5), +1);
        const auto b = finite_point(curve, Complex(2.0, 1.5), +1);
        const auto path = plan_path(curve, a, b);
        REQUIRE(path.segments.size() == 1);
        CHECK(path.segments[0].kind == PathSeg::Kind::Line);
        CHECK(path.clearance > 0.25 * curve.discriminant_margin);
    }
    SUBCASE("an obstructed corridor detours with arcs at clearance") {
        const auto a = finite_point(curve, Complex(-2.0, 0.0), +1);
        const auto b = finite_point(curve, Complex(2.0, 0.0), +1);
        const auto path = plan_path(curve, a, b);
        int arcs = 0;
        for (const auto& seg : path.segments)
            if (seg.kind == PathSeg::Kind::Arc) ++arcs;
        CHECK(arcs >= 1);
        CHECK(path.clearance >= 0.25 * curve.discriminant_margin * (1.0 - 1e-6));
        CHECK(std::abs(path.start() - a.x) < 1e-12);
        CHECK(std::abs(path.end() - b.x) < 1e-12);
    }
    SUBCASE("error paths") {
        const auto p = finite_point(curve, Complex(2.0, 1.0), +1);
        CHECK_THROWS_AS(plan_path(curve, p, infinity_point()), EndpointAtInfinityError);
        CHECK_THROWS_AS(plan_path(curve, p, finite_point(curve, -2.0, 1), 0.5),
                        NoRouteFoundError);
    }
}

TEST_CASE("continue_y monodromy around branch points") {
    const auto curve = lemniscatic();

    SUBCASE("one branch point flips the sheet") {
        const auto loop = branch_circle(curve, 1, 0.5); // around 0
        const Complex x0 = loop.start();
        const Complex y0 = curve.y_reference(x0);
        CHECK(std::abs(continue_y(curve, loop, y0) + y0) < 1e-9);
    }
    SUBCASE("two branch points restore the sheet") {
        XPath loop;
        // rectangle enclosing 0 and 1 only
        const Complex c[4] = {{-0.5, -0.4}, {1.5, -0.4}, {1.5, 0.4}, {-0.5, 0.4}};
        for (int i = 0; i < 4; ++i) loop.segments.push_back(PathSeg::line(c[i], c[(i + 1) % 4]));
        const Complex y0 = curve.y_reference(loop.start());
        CHECK(std::abs(continue_y(curve, loop, y0) - y0) < 1e-9);
        const auto winding = enclosed_branch_parity(curve, loop);
        CHECK(winding.total == 2);
        CHECK_FALSE(winding.odd_parity);
    }
    SUBCASE("inconsistent start is rejected") {
        XPath seg;
        seg.segments.push_back(PathSeg::line(Complex(2.0, 0.0), Complex(2.0, 1.0)));
        CHECK_THROWS_AS(continue_y(curve, seg, Complex(1.0, 0.0)), InconsistentStartError);
    }
}

TEST_CASE("monodromy sign equals enclosed parity on random closed loops") {
    Rng rng(101);
    for (int g = 1; g <= 3; ++g) {
        const auto curve = sample_curve(g, rng);
        for (int n = 0; n < 100; ++n) {
            const auto loop = testsup::random_closed_polygon(curve, rng);
            const auto winding = enclosed_branch_parity(curve, loop);
            const Complex y0 = curve.y_reference(loop.start());
            const Complex y1 = continue_y(curve, loop, y0);
            const double expected_sign = winding.odd_parity ? -1.0 : 1.0;
            CHECK(std::abs(y1 - expected_sign * y0) < 1e-9 * std::max(1.0, std::abs(y0)));
        }
    }
}

TEST_CASE("contractible contours integrate to zero") {
    const auto curve = lemniscatic();
    XPath square;
    const Complex c[4] = {{2.0, 2.0}, {2.4, 2.0}, {2.4, 2.4}, {2.0, 2.4}};
    for (int i = 0; i < 4; ++i) square.segments.push_back(PathSeg::line(c[i], c[(i + 1) % 4]));
    const auto result = integrate_basis(curve, square, curve.y_reference(square.start()));
    CHECK(std::abs(result.values[0]) < 1e-10);
}

TEST_CASE("reversing a path negates the integral") {
    const auto curve = lemniscatic();
    const auto a = finite_point(curve, Complex(-2.0, 0.7), +1);
    const auto b = finite_point(curve, Complex(1.8, -0.9), +1);
    const auto path = plan_path(curve, a, b);
    const auto fwd = integrate_basis(curve, path, y_of(curve, a));
    const auto rev = integrate_basis(curve, path.reversed(), fwd.y_end);
    CHECK(std::abs(fwd.values[0] + rev.values[0]) < 1e-11);
    CHECK(std::abs(rev.y_end - y_of(curve, a)) < 1e-9);
}

TEST_CASE("integral is additive over a split") {
    const auto curve = lemniscatic();
    const auto a = finite_point(curve, Complex(-2.0, 0.7), +1);
    const auto b = finite_point(curve, Complex(1.8, -0.9), +1);
    const auto path = plan_path(curve, a, b);
    REQUIRE(path.segments.size() >= 2);

    const auto whole = integrate_basis(curve, path, y_of(curve, a));

    XPath first, second;
    const std::size_t cut = path.segments.size() / 2;
    first.segments.assign(path.segments.begin(), path.segments.begin() + cut);
    second.segments.assign(path.segments.begin() + cut, path.segments.end());
    const auto part1 = integrate_basis(curve, first, y_of(curve, a));
    const Complex y_mid = continue_y(curve, first, y_of(curve, a));
    const auto part2 = integrate_basis(curve, second, y_mid);

    CHECK(std::abs(whole.values[0] - part1.values[0] - part2.values[0]) < 1e-11);
}

TEST_CASE("a-cycle period equals twice the branch-to-branch integral") {
    // two independent quadrature routes: the closed tube contour around the
    // pair, and the sqrt-substituted straight integral between branch points
    const auto curve = lemniscatic();
    const auto cycles = build_cycles(curve);

    // cycle 0 encircles branch points -1 and 0
    const auto tube = integrate_basis(curve, cycles[0].path, cycles[0].base_y);

    const auto from = branch_point_index(curve, 0);
    const auto to = branch_point_index(curve, 1);
    const auto seg_path = plan_path(curve, from, to);
    CHECK(seg_path.starts_at_branch());
    CHECK(seg_path.ends_at_branch());
    const auto seg = integrate_basis(curve, seg_path, std::nullopt);

    const double match = std::min(std::abs(tube.values[0] - 2.0 * seg.values[0]),
                                  std::abs(tube.values[0] + 2.0 * seg.values[0]));
    CHECK(match < 1e-9);
    // and the real period of x^3 - x is twice the lemniscate constant
    CHECK(std::abs(std::abs(tube.values[0]) - 2.0 * 2.6220575542921198) < 1e-10);
}

TEST_CASE("doubling the quadrature order leaves periods unchanged") {
    Rng rng(5);
    const auto curve = sample_curve(2, rng);
    const auto cycles = build_cycles(curve);
    for (const auto& cycle : cycles) {
        QuadOptions base, doubled;
        doubled.order = 64;
        const auto lo = integrate_basis(curve, cycle.path, cycle.base_y, base);
        const auto hi = integrate_basis(curve, cycle.path, cycle.base_y, doubled);
        for (int k = 0; k < curve.genus; ++k)
            CHECK(std::abs(lo.values[k] - hi.values[k]) < 1e-10);
    }
}

TEST_CASE("winding counts around explicit circles") {
    const auto curve = lemniscatic();
    SUBCASE("radius 1/2 around the middle branch point") {
        const auto report = enclosed_branch_parity(curve, branch_circle(curve, 1, 0.5));
        CHECK(report.total == 1);
        CHECK(report.odd_parity);
        CHECK(report.per_branch[1] == 1);
    }
    SUBCASE("contractible loop") {
        XPath loop;
        const Complex c[4] = {{3.0, 0.0}, {3.3, 0.1}, {3.3, 0.4}, {3.0, 0.3}};
        for (int i = 0; i < 4; ++i) loop.segments.push_back(PathSeg::line(c[i], c[(i + 1) % 4]));
        CHECK(enclosed_branch_parity(curve, loop).total == 0);
    }
    SUBCASE("open paths are rejected") {
        XPath open;
        open.segments.push_back(PathSeg::line(Complex(2.0, 0.0), Complex(3.0, 0.0)));
        CHECK_THROWS_AS(enclosed_branch_parity(curve, open), PathNotClosedError);
    }
}

TEST_CASE("dlog integral around an enclosed fiber is the winding number") {
    const auto curve = lemniscatic();
    const auto h = RationalFunctionSpec::linear(Complex(-0.5, 0.0)); // between -1 and 0
    const auto cycles = build_cycles(curve);
    const Complex two_pi_i(0.0, 2.0 * testsup::kPi);
    for (const auto& cycle : cycles) {
        const Complex period = integrate_dlog(curve, cycle.path, h) / two_pi_i;
        const int expected = winding_number(cycle.flat_x, Complex(-0.5, 0.0));
        CHECK(std::abs(period - static_cast<double>(expected)) < 1e-10);
    }
}
