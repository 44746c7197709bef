#ifndef ABELJAC_ELLIPTIC_HPP
#define ABELJAC_ELLIPTIC_HPP

#include "abeljac/lattice.hpp"

namespace abeljac {

// Optimal-branch complex arithmetic-geometric mean: at each step the square
// root sign is chosen so that |g - a| <= |g + a|, ties broken toward
// Re(g/a) >= 0. Converges quadratically to relative 1e-14.
Complex agm(Complex a, Complex b);

struct EllipticPeriods {
    Complex omega1{}, omega2{}; // fundamental periods of dx/y
    Complex tau{};              // omega2/omega1, normalized to Im tau > 0
};

// Independent genus-1 periods of dx/y on y^2 = c (x-e1)(x-e2)(x-e3) from the
// AGM on root differences:
//   omega1 = 2 pi / (sqrt(c) * agm(sqrt(e1-e3), sqrt(e1-e2)))
//   omega2 = 2 pi i / (sqrt(c) * agm(sqrt(e1-e3), sqrt(e2-e3)))
// with (e1, e2, e3) the branch points in descending (Re, Im) order and square
// roots paired by the optimal-branch rule. The constant 2*pi is calibrated
// against direct quadrature (see tests) and frozen here.
EllipticPeriods elliptic_periods_agm(const HyperellipticCurve& curve);

PeriodLattice lattice_from_periods(Complex omega1, Complex omega2);

// True iff every generator of each lattice lies within tol of the other
// lattice (mutual inclusion via lattice_distance).
bool lattice_equivalent(const PeriodLattice& L1, const PeriodLattice& L2, double tol);

} // namespace abeljac

#endif
