#include <doctest.h>

#include "abeljac/errors.hpp"
#include "test_support.hpp"

using namespace abeljac;

namespace {

// random unimodular integer matrix as a product of elementary row operations
IntMat random_unimodular(int n, Rng& rng) {
    IntMat m = IntMat::Identity(n, n);
    for (int ops = 0; ops < 3 * n; ++ops) {
        const int i = rng.integer(0, n - 1);
        int j = rng.integer(0, n - 1);
        if (i == j) j = (j + 1) % n;
        const long long c = rng.integer(-2, 2);
        m.row(i) += c * m.row(j);
        if (rng.integer(0, 3) == 0) m.row(i).swap(m.row(j));
    }
    return m;
}

} // namespace

TEST_CASE("build_cycles produces 2g closed cycles around consecutive pairs") {
    Rng rng(31);
    for (int g = 1; g <= 3; ++g) {
        const auto curve = sample_curve(g, rng);
        const auto cycles = build_cycles(curve);
        REQUIRE(static_cast<int>(cycles.size()) == 2 * g);
        for (const auto& cycle : cycles) {
            const auto winding = enclosed_branch_parity(curve, cycle.path);
            CHECK_FALSE(winding.odd_parity);
            CHECK(winding.total == 2);
            CHECK(winding.per_branch[cycle.pair_index] == 1);
            CHECK(winding.per_branch[cycle.pair_index + 1] == 1);
            CHECK(cycle.path.clearance > 0.0);
            // closed on the surface
            const Complex y_back = continue_y(curve, cycle.path, cycle.base_y);
            CHECK(std::abs(y_back - cycle.base_y) < 1e-9 * std::max(1.0, std::abs(cycle.base_y)));
        }
    }
}

TEST_CASE("intersection matrix is antisymmetric with zero diagonal") {
    Rng rng(37);
    const auto curve = sample_curve(2, rng);
    const auto cycles = build_cycles(curve);
    const auto M = intersection_matrix(curve, cycles).M;
    CHECK(M == (-M.transpose()).eval());
    for (int i = 0; i < M.rows(); ++i) CHECK(M(i, i) == 0);
    // the enumerator itself must agree when the arguments are swapped
    CHECK(intersection_number(curve, cycles[0], cycles[1]) ==
          -intersection_number(curve, cycles[1], cycles[0]));
}

TEST_CASE("genus-1 consecutive-pair cycles intersect once") {
    const auto curve = new_curve({0.0, -1.0, 0.0, 1.0});
    const auto cycles = build_cycles(curve);
    const auto M = intersection_matrix(curve, cycles).M;
    CHECK(std::llabs(M(0, 1)) == 1);
    CHECK(M(1, 0) == -M(0, 1));
}

TEST_CASE("symplectic_normalize on closed-form inputs") {
    SUBCASE("J is already normal") {
        const IntMat J = standard_symplectic_form(2);
        const IntMat T = symplectic_normalize(J);
        CHECK(T == IntMat::Identity(4, 4));
    }
    SUBCASE("-J swaps the a and b blocks") {
        const IntMat J = standard_symplectic_form(2);
        const IntMat T = symplectic_normalize((-J).eval());
        CHECK((T * (-J) * T.transpose()).eval() == J);
        // |T| is the block swap permutation
        IntMat swap = IntMat::Zero(4, 4);
        swap(0, 2) = swap(1, 3) = swap(2, 0) = swap(3, 1) = 1;
        CHECK(T.cwiseAbs() == swap);
    }
    SUBCASE("non-unimodular inputs are rejected") {
        IntMat M = 2 * standard_symplectic_form(1);
        CHECK_THROWS_AS(symplectic_normalize(M), NotUnimodularError);
    }
    SUBCASE("non-antisymmetric inputs are rejected") {
        IntMat M = IntMat::Identity(2, 2);
        CHECK_THROWS_AS(symplectic_normalize(M), InputError);
    }
}

TEST_CASE("symplectic_normalize reduces random unimodular conjugates of J") {
    Rng rng(43);
    for (int g = 1; g <= 3; ++g) {
        const IntMat J = standard_symplectic_form(g);
        for (int n = 0; n < 10; ++n) {
            const IntMat U = random_unimodular(2 * g, rng);
            const IntMat M = (U * J * U.transpose()).eval();
            const IntMat T = symplectic_normalize(M);
            CHECK((T * M * T.transpose()).eval() == J);
            CHECK(std::llabs(integer_determinant(T)) == 1);
        }
    }
}

TEST_CASE("symplectic_basis satisfies the symplectic contract") {
    Rng rng(47);
    for (int g = 1; g <= 3; ++g) {
        const auto curve = sample_curve(g, rng);
        const auto basis = symplectic_basis(curve);
        CHECK(basis.g == g);
        CHECK((basis.transform * basis.raw_inter.M * basis.transform.transpose()).eval() ==
              standard_symplectic_form(g));
    }
}

TEST_CASE("symplectic_basis is deterministic") {
    const auto curve = new_curve({-1.0, 0.0, 0.0, 0.0, 0.0, 1.0}); // x^5 - 1
    const auto b1 = symplectic_basis(curve);
    const auto b2 = symplectic_basis(curve);
    CHECK(b1.transform == b2.transform);
    CHECK(b1.raw_inter.M == b2.raw_inter.M);
    REQUIRE(b1.raw.size() == b2.raw.size());
    for (std::size_t i = 0; i < b1.raw.size(); ++i) {
        REQUIRE(b1.raw[i].flat_x.size() == b2.raw[i].flat_x.size());
        for (std::size_t v = 0; v < b1.raw[i].flat_x.size(); ++v)
            CHECK(b1.raw[i].flat_x[v] == b2.raw[i].flat_x[v]);
    }
}

TEST_CASE("intersection matrix is stable under re-realization") {
    // brute-force cross-check: realizing the tubes at a different clearance
    // fraction changes every polyline, but not the homology classes
    Rng rng(53);
    const auto curve = sample_curve(2, rng);
    const auto narrow = build_cycles(curve, 0.18);
    const auto wide = build_cycles(curve, 0.28);
    const auto Mn = intersection_matrix(curve, narrow).M;
    const auto Mw = intersection_matrix(curve, wide).M;
    CHECK(Mn == Mw);
}

TEST_CASE("integer determinant on small cases") {
    IntMat m(3, 3);
    m << 2, 0, 1, 1, 1, 0, 0, 3, 1;
    CHECK(integer_determinant(m) == 5);
    CHECK(integer_determinant(standard_symplectic_form(3)) == 1);
}
