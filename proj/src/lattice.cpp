#include "abeljac/lattice.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

PeriodLattice lattice_from_generators(const Eigen::MatrixXcd& gens) {
    const int g = static_cast<int>(gens.rows());
    if (gens.cols() != 2 * g) throw InputError("lattice: expected 2g generators in C^g");

    PeriodLattice lat;
    lat.g = g;
    lat.gens = gens;
    lat.real_basis.resize(2 * g, 2 * g);
    for (int j = 0; j < 2 * g; ++j) {
        for (int i = 0; i < g; ++i) {
            lat.real_basis(i, j) = gens(i, j).real();
            lat.real_basis(g + i, j) = gens(i, j).imag();
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lat.real_basis);
    const auto& sv = svd.singularValues();
    lat.min_singular = sv(sv.size() - 1);
    lat.condition = lat.min_singular > 0.0 ? sv(0) / lat.min_singular
                                           : std::numeric_limits<double>::infinity();
    if (!(lat.min_singular > 0.0))
        throw IllConditionedLatticeError("lattice: generators are not R-linearly independent");

    lat.solver = Eigen::PartialPivLU<Eigen::MatrixXd>(lat.real_basis);
    return lat;
}

PeriodLattice make_lattice(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    const int g = static_cast<int>(A.rows());
    Eigen::MatrixXcd gens(g, 2 * g);
    // generator j <= g is row j of A; generator g + j is row j of B
    for (int j = 0; j < g; ++j) {
        gens.col(j) = A.row(j).transpose();
        gens.col(g + j) = B.row(j).transpose();
    }
    return lattice_from_generators(gens);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> real_coordinates(const PeriodLattice& lattice,
                                                             const Eigen::VectorXcd& v) {
    const int g = lattice.g;
    if (v.size() != g) throw DimensionMismatchError("real_coordinates: wrong vector dimension");
    Eigen::VectorXd rhs(2 * g);
    for (int i = 0; i < g; ++i) {
        rhs(i) = v(i).real();
        rhs(g + i) = v(i).imag();
    }
    const Eigen::VectorXd coords = lattice.solver.solve(rhs);
    const double residual = (lattice.real_basis * coords - rhs).norm();
    if (residual > 1e-12 * std::max(1.0, rhs.norm()) * lattice.condition)
        throw IllConditionedLatticeError("real_coordinates: solve residual too large");
    return {coords.head(g), coords.tail(g)};
}

namespace {

Eigen::VectorXcd combination(const PeriodLattice& lattice, const Eigen::VectorXd& coeffs) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(lattice.g);
    for (int j = 0; j < 2 * lattice.g; ++j) out += coeffs(j) * lattice.gens.col(j);
    return out;
}

} // namespace

Eigen::VectorXcd reduce_mod_lattice(const PeriodLattice& lattice, const Eigen::VectorXcd& v) {
    const auto [s, t] = real_coordinates(lattice, v);
    // coordinates a rounding error below an integer snap to 0, so lattice
    // points reduce to 0 rather than to a full generator
    const auto frac_of = [](double x) {
        double fr = x - std::floor(x);
        if (fr >= 1.0 - 1e-9) fr = 0.0;
        return fr;
    };
    Eigen::VectorXd frac(2 * lattice.g);
    for (int i = 0; i < lattice.g; ++i) {
        frac(i) = frac_of(s(i));
        frac(lattice.g + i) = frac_of(t(i));
    }
    return combination(lattice, frac);
}

double lattice_distance(const PeriodLattice& lattice, const Eigen::VectorXcd& v) {
    const auto [s, t] = real_coordinates(lattice, v);
    const int n = 2 * lattice.g;
    Eigen::VectorXd rounded(n);
    for (int i = 0; i < lattice.g; ++i) {
        rounded(i) = std::round(s(i));
        rounded(lattice.g + i) = std::round(t(i));
    }
    const Eigen::VectorXcd residue = v - combination(lattice, rounded);

    // enumerate the +-1 window around the rounded coordinates
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd candidate(lattice.g);
    for (long long code = 0; code < count; ++code) {
        long long m = code;
        candidate = residue;
        for (int i = 0; i < n; ++i) {
            const int offset = static_cast<int>(m % 3) - 1;
            m /= 3;
            if (offset != 0) candidate -= static_cast<double>(offset) * lattice.gens.col(i);
        }
        best = std::min(best, candidate.norm());
    }
    return best;
}

double shortest_generator(const PeriodLattice& lattice) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 2 * lattice.g; ++j) best = std::min(best, lattice.gens.col(j).norm());
    return best;
}

} // namespace abeljac
