#ifndef ABELJAC_HOMOLOGY_HPP
#define ABELJAC_HOMOLOGY_HPP

#include <Eigen/Dense>

#include "abeljac/curve.hpp"
#include "abeljac/path.hpp"

namespace abeljac {

using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// A closed cycle on the surface, realized as a closed x-plane contour with
// sheet tracking. Raw cycle i is the boundary of a tube neighborhood of a
// planned branch-to-branch path between consecutive branch points e_i, e_i+1,
// so it encircles exactly that pair.
struct Cycle {
    int pair_index = 0;           // encircles branch_points[pair_index], [pair_index+1]
    XPath path;                   // realized closed contour, counterclockwise
    Complex base_y{};             // y at path.start() fixing the lift
    std::vector<Complex> flat_x;  // flattened polyline (closed: back() == front())
    std::vector<Complex> flat_y;  // y threaded along flat_x
};

struct IntersectionMatrix {
    IntMat M; // M(i,j) = cycle_i # cycle_j
};

// 2g raw cycles plus the unimodular transform to a symplectic basis
// (a_1..a_g, b_1..b_g): symplectic cycle i = sum_j transform(i,j) * raw_j.
struct SymplecticBasis {
    int g = 0;
    std::vector<Cycle> raw;        // 2g raw cycles
    IntersectionMatrix raw_inter;  // intersections of the raw cycles
    IntMat transform;              // T with T * M * T^T = J
};

// Raw cycles around consecutive branch-point pairs, each verified closed on
// the surface (even enclosed parity, y returns to base_y).
std::vector<Cycle> build_cycles(const HyperellipticCurve& curve, double clearance_fraction = 0.25);

// Signed same-sheet crossing counts of the realized contours.
IntersectionMatrix intersection_matrix(const HyperellipticCurve& curve,
                                       const std::vector<Cycle>& cycles);

// Surface intersection number of two realized cycles (brute-force crossing
// enumeration with sheet comparison).
long long intersection_number(const HyperellipticCurve& curve, const Cycle& c1, const Cycle& c2);

// Unimodular integer T with T * M * T^T = J = [[0, I], [-I, 0]], computed by
// pivoting gcd reduction on the antisymmetric form. Deterministic given M.
IntMat symplectic_normalize(const IntMat& M);

// build_cycles + intersection_matrix + symplectic_normalize.
SymplecticBasis symplectic_basis(const HyperellipticCurve& curve, double clearance_fraction = 0.25);

IntMat standard_symplectic_form(int g);

// Exact integer determinant (fraction-free elimination).
long long integer_determinant(IntMat m);

} // namespace abeljac

#endif
