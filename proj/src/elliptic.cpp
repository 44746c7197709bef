#include "abeljac/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

constexpr double kPi = 3.14159265358979323846;

// optimal square-root branch relative to the running arithmetic mean
Complex optimal_sqrt(Complex product, Complex mean) {
    Complex r = std::sqrt(product);
    const double keep = std::abs(r - mean);
    const double flip = std::abs(r + mean);
    if (flip < keep) return -r;
    if (flip == keep && (r / mean).real() < 0.0) return -r;
    return r;
}

} // namespace

Complex agm(Complex a, Complex b) {
    if (a == Complex{} || b == Complex{}) throw ZeroInputError("agm: zero input");
    for (int iter = 0; iter < 80; ++iter) {
        const Complex mean = 0.5 * (a + b);
        if (std::abs(a - b) <= 1e-14 * std::abs(mean)) return mean;
        const Complex geo = optimal_sqrt(a * b, mean);
        a = mean;
        b = geo;
    }
    throw NoConvergenceError("agm: did not converge in 80 iterations");
}

EllipticPeriods elliptic_periods_agm(const HyperellipticCurve& curve) {
    if (curve.genus != 1) throw WrongGenusError("elliptic_periods_agm: genus-1 curves only");

    // descending (Re, Im) labeling; in the real-ordered case this reduces to
    // e1 > e2 > e3 and the classical formulas
    const Complex e1 = curve.branch_points[2];
    const Complex e2 = curve.branch_points[1];
    const Complex e3 = curve.branch_points[0];
    const Complex lead = curve.coeffs.back();

    const Complex r13 = std::sqrt(e1 - e3);
    Complex r12 = std::sqrt(e1 - e2);
    if (std::abs(r13 - r12) > std::abs(r13 + r12)) r12 = -r12;
    Complex r23 = std::sqrt(e2 - e3);
    if (std::abs(r13 - r23) > std::abs(r13 + r23)) r23 = -r23;

    const Complex sqrt_lead = std::sqrt(lead);

    EllipticPeriods out;
    out.omega1 = 2.0 * kPi / (sqrt_lead * agm(r13, r12));
    out.omega2 = Complex(0.0, 2.0 * kPi) / (sqrt_lead * agm(r13, r23));
    out.tau = out.omega2 / out.omega1;
    if (out.tau.imag() < 0.0) {
        out.omega2 = -out.omega2;
        out.tau = -out.tau;
    }
    return out;
}

PeriodLattice lattice_from_periods(Complex omega1, Complex omega2) {
    Eigen::MatrixXcd gens(1, 2);
    gens(0, 0) = omega1;
    gens(0, 1) = omega2;
    return lattice_from_generators(gens);
}

bool lattice_equivalent(const PeriodLattice& L1, const PeriodLattice& L2, double tol) {
    if (L1.g != L2.g) throw DimensionMismatchError("lattice_equivalent: different genus");
    for (int j = 0; j < 2 * L1.g; ++j) {
        if (lattice_distance(L2, L1.gens.col(j)) > tol) return false;
        if (lattice_distance(L1, L2.gens.col(j)) > tol) return false;
    }
    return true;
}

} // namespace abeljac
