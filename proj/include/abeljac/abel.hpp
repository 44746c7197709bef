#ifndef ABELJAC_ABEL_HPP
#define ABELJAC_ABEL_HPP

#include "abeljac/pipeline.hpp"
#include "abeljac/rng.hpp"

namespace abeljac {

// A value of the Abel-Jacobi map: a representative in C^g plus the canonical
// reduced representative (real lattice coordinates in [0, 1)^2g).
struct JacobianPoint {
    Eigen::VectorXcd value;
    Eigen::VectorXcd reduced;
};

JacobianPoint make_jacobian_point(const PeriodLattice& lattice, const Eigen::VectorXcd& value);

// u_O(P): integrals of all g basis forms along a planned O -> P path, mod
// Lambda. O and P must be finite; either may be a branch point.
JacobianPoint abel_point(const Pipeline& pipe, const CurvePoint& O, const CurvePoint& P);

// u(D) = sum n_P u_O(P) for deg D = 0. Entries at infinity are eliminated
// first against the reference branch point via the principal divisors of
// (x - e_1) and y, so infinity never requires a path.
JacobianPoint abel_divisor(const Pipeline& pipe, const CurvePoint& O, const Divisor& D);

// Degree-zero divisor linearly equivalent to D with no support at infinity.
Divisor eliminate_infinity(const HyperellipticCurve& curve, const Divisor& D);

struct PrincipalCheck {
    double distance = 0.0;
    bool pass = false;
};

// Abel forward: u(div h) must vanish mod Lambda.
PrincipalCheck check_principal(const Pipeline& pipe, const RationalFunctionSpec& h, double tol);

// lattice_distance(u_O'(D) - u_O(D)); < tol on degree-zero divisors.
double base_point_shift(const Pipeline& pipe, const CurvePoint& O, const CurvePoint& Oprime,
                        const Divisor& D);

// Same difference without the degree check (test hook: for deg D != 0 the
// difference equals -(deg D) * integral from O to O' of the basis vector).
Eigen::VectorXcd base_point_shift_raw(const Pipeline& pipe, const CurvePoint& O,
                                      const CurvePoint& Oprime, const Divisor& D);

struct DlogPeriods {
    std::vector<long long> integers; // rounded values of period / (2 pi i)
    std::vector<double> defects;     // distance to the rounded integer
    double max_defect = 0.0;
};

// Cycle periods of d log h / (2 pi i) over the symplectic basis; each must be
// within 1e-8 of an integer (residue formula).
DlogPeriods dlog_periods(const Pipeline& pipe, const RationalFunctionSpec& h);

struct InversionResult {
    std::vector<CurvePoint> points; // Q_1..Q_g
    Eigen::VectorXcd chart_values;  // z_j (x-coordinates of Q_j)
    Eigen::VectorXcd F;             // F(Q)
    double residual = 0.0;
    int iterations = 0;
};

// Damped Newton on F_i(z) = sum_j integral from P_j to z_j of omega_i, with
// analytic Jacobian phi_ij = z_j^(i-1)/y(z_j). Charts are disks of radius
// chart_fraction * distance to the nearest branch point around each base.
InversionResult jacobi_invert_local(const Pipeline& pipe, const std::vector<CurvePoint>& base,
                                    const Eigen::VectorXcd& xi, int max_iter, double tol);

// Base-tuple Jacobian matrix phi_ij = evaluate_differential(i, P_j).
Eigen::MatrixXcd inversion_jacobian(const HyperellipticCurve& curve,
                                    const std::vector<CurvePoint>& base);

// F evaluated by in-chart integration from the base lifts.
Eigen::VectorXcd inversion_F(const Pipeline& pipe, const std::vector<CurvePoint>& base,
                             const Eigen::VectorXcd& z);

// Rejection-sample a base tuple with well-conditioned Jacobian (Lemma-16
// style genericity: generic tuples work).
std::vector<CurvePoint> sample_base_tuple(const Pipeline& pipe, Rng& rng, int max_draws = 50);

struct EmbeddingReport {
    int pairs = 0;
    double min_pair_distance = 0.0;    // min over sampled pairs of |u(P) - u(P')| mod Lambda
    double min_max_differential = 0.0; // min over samples of max_k |phi_k(P)|
    bool pass = false;
};

// Injectivity and immersion spot checks at sampled points.
EmbeddingReport embedding_spot_check(const Pipeline& pipe, const CurvePoint& O, int sample_size,
                                     Rng& rng, double distance_tol = 1e-4,
                                     double differential_tol = 1e-10);

// Random finite non-branch point, at safe distance from the branch set.
CurvePoint sample_point(const HyperellipticCurve& curve, Rng& rng);

// Deterministic finite non-branch base point. Keeps Abel checks nontrivial:
// with a branch-point base, sigma-conjugate path pairs cancel exactly in C^g
// and the lattice reduction would never be exercised.
CurvePoint generic_base_point(const HyperellipticCurve& curve);

} // namespace abeljac

#endif
