#ifndef ABELJAC_SETTINGS_HPP
#define ABELJAC_SETTINGS_HPP

#include <cstdint>

namespace abeljac {

// Numeric knobs for the whole pipeline. Defaults are tuned for curves with
// branch points of order unity and pairwise separation down to ~0.1.
struct Settings {
    // curve validation
    double degeneracy_threshold = 1e-8; // min root separation, relative to root scale

    // path planning / sheet tracking
    double clearance_fraction = 0.25; // clearance = fraction * discriminant_margin

    // quadrature
    int gl_order = 32;       // base Gauss-Legendre order
    int max_depth = 12;      // adaptive bisection depth
    double quad_tol = 1e-11; // per-integral convergence target

    // verification thresholds
    double symmetry_tol = 1e-8;    // ||Omega - Omega^T||_inf
    double membership_tol = 1e-7;  // lattice distance accepted as "zero mod lattice"
    double rank_margin_tol = 1e-8; // smallest singular value of the real lattice basis
    double a_condition_max = 1e12; // beyond this, A counts as singular

    // Newton inversion
    double newton_tol = 1e-8;
    int newton_max_iter = 20;
    double chart_fraction = 0.2;      // chart radius = fraction * distance to nearest branch point
    double jacobian_condition_max = 1e6; // base-tuple rejection threshold

    // randomized checks
    std::uint64_t seed = 0;
};

} // namespace abeljac

#endif
