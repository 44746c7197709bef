#include <doctest.h>

#include "abeljac/errors.hpp"
#include "abeljac/lattice.hpp"
#include "test_support.hpp"

using namespace abeljac;

namespace {

PeriodLattice square_lattice_g2() {
    // A = I, B = i I: generators e1, e2, i e1, i e2
    return make_lattice(Eigen::MatrixXcd::Identity(2, 2),
                        Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(2, 2));
}

PeriodLattice pipeline_lattice(int g, Rng& rng) {
    return build_pipeline(sample_curve(g, rng)).lattice;
}

} // namespace

TEST_CASE("real coordinates on closed-form input") {
    const auto lat = square_lattice_g2();
    SUBCASE("zero") {
        const auto [s, t] = real_coordinates(lat, Eigen::VectorXcd::Zero(2));
        CHECK(s.norm() == 0.0);
        CHECK(t.norm() == 0.0);
    }
    SUBCASE("first generator") {
        const auto [s, t] = real_coordinates(lat, lat.generator(0));
        CHECK(std::abs(s(0) - 1.0) < 1e-14);
        CHECK(std::abs(s(1)) < 1e-14);
        CHECK(t.norm() < 1e-14);
    }
}

TEST_CASE("real coordinates round-trip on random vectors") {
    Rng rng(89);
    for (int g = 1; g <= 4; ++g) {
        const auto lat = pipeline_lattice(g, rng);
        for (int n = 0; n < 10; ++n) {
            Eigen::VectorXcd v(g);
            for (int i = 0; i < g; ++i) v(i) = rng.in_disk(3.0);
            const auto [s, t] = real_coordinates(lat, v);
            Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(g);
            for (int i = 0; i < g; ++i)
                rebuilt += s(i) * lat.generator(i) + t(i) * lat.generator(g + i);
            CHECK((rebuilt - v).norm() < 1e-12 * std::max(1.0, v.norm()));
        }
    }
}

TEST_CASE("integer combinations give back their coefficients") {
    Rng rng(97);
    const auto lat = pipeline_lattice(2, rng);
    for (int n = 0; n < 10; ++n) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
        std::vector<int> coeffs(4);
        for (int j = 0; j < 4; ++j) {
            coeffs[j] = rng.integer(-3, 3);
            v += static_cast<double>(coeffs[j]) * lat.generator(j);
        }
        const auto [s, t] = real_coordinates(lat, v);
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(s(j) - coeffs[j]) < 1e-9);
            CHECK(std::abs(t(j) - coeffs[2 + j]) < 1e-9);
        }
    }
}

TEST_CASE("reduction is a canonical representative") {
    Rng rng(103);
    const auto lat = pipeline_lattice(2, rng);

    SUBCASE("lattice points reduce to zero") {
        const Eigen::VectorXcd v = 2.0 * lat.generator(1) - 3.0 * lat.generator(2);
        CHECK(reduce_mod_lattice(lat, v).norm() < 1e-9);
    }
    SUBCASE("translation invariance and idempotence") {
        for (int n = 0; n < 10; ++n) {
            Eigen::VectorXcd v(2);
            for (int i = 0; i < 2; ++i) v(i) = rng.in_disk(5.0);
            const Eigen::VectorXcd r1 = reduce_mod_lattice(lat, v);
            const Eigen::VectorXcd r2 =
                reduce_mod_lattice(lat, v + lat.generator(rng.integer(0, 3)));
            CHECK((r1 - r2).norm() < 1e-9);
            CHECK((reduce_mod_lattice(lat, r1) - r1).norm() < 1e-12);
        }
    }
}

TEST_CASE("lattice distance") {
    SUBCASE("exact values on the square lattice") {
        const auto lat = square_lattice_g2();
        CHECK(lattice_distance(lat, Eigen::VectorXcd::Zero(2)) < 1e-15);
        Eigen::VectorXcd half = 0.5 * lat.generator(0);
        CHECK(lattice_distance(lat, half) == doctest::Approx(0.5));
        CHECK(lattice_distance(lat, half) >= 0.4 * shortest_generator(lat));
    }
    SUBCASE("zero on integer combinations, translation invariant") {
        Rng rng(107);
        const auto lat = pipeline_lattice(2, rng);
        for (int n = 0; n < 10; ++n) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
            for (int j = 0; j < 4; ++j)
                v += static_cast<double>(rng.integer(-5, 5)) * lat.generator(j);
            CHECK(lattice_distance(lat, v) < 1e-9);

            Eigen::VectorXcd w(2);
            for (int i = 0; i < 2; ++i) w(i) = rng.in_disk(2.0);
            const double d1 = lattice_distance(lat, w);
            const double d2 = lattice_distance(lat, w + lat.generator(rng.integer(0, 3)));
            CHECK(std::abs(d1 - d2) < 1e-9);
        }
    }
    SUBCASE("half-generator perturbations are rejected by the membership test") {
        Rng rng(109);
        const auto lat = pipeline_lattice(1, rng);
        const Eigen::VectorXcd v = 0.5 * lat.generator(0);
        CHECK(lattice_distance(lat, v) > 1e-7);
    }
}

TEST_CASE("degenerate generators are rejected") {
    Eigen::MatrixXcd gens(1, 2);
    gens(0, 0) = Complex(1.0, 0.0);
    gens(0, 1) = Complex(2.0, 0.0); // R-linearly dependent on the first
    CHECK_THROWS_AS(lattice_from_generators(gens), IllConditionedLatticeError);
}

TEST_CASE("dimension mismatches are rejected") {
    const auto lat = square_lattice_g2();
    CHECK_THROWS_AS(real_coordinates(lat, Eigen::VectorXcd::Zero(3)), DimensionMismatchError);
}
