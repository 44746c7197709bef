#ifndef ABELJAC_LATTICE_HPP
#define ABELJAC_LATTICE_HPP

#include <Eigen/Dense>

#include "abeljac/curve.hpp"

namespace abeljac {

// The period lattice Lambda = A Z^g + B Z^g in C^g. Generators are the rows
// of A (first g) and of B (last g), stored as columns of `gens`.
struct PeriodLattice {
    int g = 0;
    Eigen::MatrixXcd gens;              // g x 2g
    Eigen::MatrixXd real_basis;         // 2g x 2g, column j = [Re gen_j; Im gen_j]
    Eigen::PartialPivLU<Eigen::MatrixXd> solver; // factorization of real_basis
    double condition = 0.0;
    double min_singular = 0.0;          // rank-2g margin

    Eigen::VectorXcd generator(int j) const { return gens.col(j); }
};

PeriodLattice make_lattice(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);
PeriodLattice lattice_from_generators(const Eigen::MatrixXcd& gens);

// Unique real coordinates (s, t) with v = sum s_k genA_k + sum t_k genB_k.
std::pair<Eigen::VectorXd, Eigen::VectorXd> real_coordinates(const PeriodLattice& lattice,
                                                             const Eigen::VectorXcd& v);

// Representative of v mod Lambda with real coordinates in [0, 1)^2g.
Eigen::VectorXcd reduce_mod_lattice(const PeriodLattice& lattice, const Eigen::VectorXcd& v);

// Distance from v to the nearest lattice point found in a +-1 window around
// the rounded real coordinates. Upper bound on the true distance; exact for
// well-conditioned lattices.
double lattice_distance(const PeriodLattice& lattice, const Eigen::VectorXcd& v);

double shortest_generator(const PeriodLattice& lattice);

} // namespace abeljac

#endif
