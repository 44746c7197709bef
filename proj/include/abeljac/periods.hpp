#ifndef ABELJAC_PERIODS_HPP
#define ABELJAC_PERIODS_HPP

#include <Eigen/Dense>

#include "abeljac/homology.hpp"
#include "abeljac/settings.hpp"

namespace abeljac {

// A(i,j) = integral of omega_j over a_i, B(i,j) = integral over b_i.
struct PeriodMatrices {
    Eigen::MatrixXcd A, B;      // g x g
    Eigen::MatrixXcd raw;       // 2g x g, row r = basis integrals over raw cycle r
    Eigen::MatrixXd raw_error;  // quadrature error estimates for raw entries
    double max_error = 0.0;
};

PeriodMatrices period_matrices(const HyperellipticCurve& curve, const DifferentialBasis& basis,
                               const SymplecticBasis& cycles, const QuadOptions& opts = {});

// Omega = A^-1 B with measured symmetry defect and Im spectrum.
struct RiemannMatrix {
    Eigen::MatrixXcd Omega;
    double symmetry_defect = 0.0; // ||Omega - Omega^T||_inf
    double min_eig_im = 0.0;      // smallest eigenvalue of Im Omega
};

RiemannMatrix riemann_matrix(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                             double a_condition_max = 1e12);

double condition_number(const Eigen::MatrixXcd& m);

struct RiemannReport {
    double a_condition = 0.0;
    double symmetry_defect = 0.0;
    double min_eig_im = 0.0;
    double rank_2g_margin = 0.0; // smallest singular value of the real 2g x 2g lattice basis
    bool spd_factorization_ok = false;
    bool pass = false;
};

} // namespace abeljac

#endif
