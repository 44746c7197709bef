#include "abeljac/periods.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "abeljac/errors.hpp"

namespace abeljac {

double condition_number(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

PeriodMatrices period_matrices(const HyperellipticCurve& curve, const DifferentialBasis& basis,
                               const SymplecticBasis& cycles, const QuadOptions& opts) {
    const int g = curve.genus;
    if (basis.size != g || cycles.g != g)
        throw InputError("period_matrices: basis/cycle size mismatch");

    PeriodMatrices out;
    out.raw.resize(2 * g, g);
    out.raw_error.resize(2 * g, g);

    for (int r = 0; r < 2 * g; ++r) {
        const Cycle& cycle = cycles.raw[r];
        const BasisIntegral integral =
            integrate_basis(curve, cycle.path, cycle.base_y, opts);
        for (int k = 0; k < g; ++k) {
            out.raw(r, k) = integral.values[k];
            out.raw_error(r, k) = integral.error;
            out.max_error = std::max(out.max_error, integral.error);
        }
    }

    // periods are linear in homology: symplectic cycles are integer
    // combinations of the raw cycles
    Eigen::MatrixXcd Tc(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j)
            Tc(i, j) = static_cast<double>(cycles.transform(i, j));
    const Eigen::MatrixXcd stacked = Tc * out.raw;

    out.A = stacked.topRows(g);
    out.B = stacked.bottomRows(g);
    return out;
}

RiemannMatrix riemann_matrix(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                             double a_condition_max) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw InputError("riemann_matrix: A and B must be square of equal size");
    const double cond = condition_number(A);
    if (!(cond < a_condition_max))
        throw SingularAError("riemann_matrix: A is numerically singular");

    RiemannMatrix out;
    // Omega(i, j) couples differentials i and j; cycles index the rows of A
    // and B, so the cycle index is contracted through the transposes. Solved
    // per column rather than forming an inverse.
    out.Omega = A.transpose().partialPivLu().solve(B.transpose());

    double defect = 0.0;
    const int g = static_cast<int>(out.Omega.rows());
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            defect = std::max(defect, std::abs(out.Omega(i, j) - out.Omega(j, i)));
    out.symmetry_defect = defect;

    const Eigen::MatrixXd im = out.Omega.imag();
    const Eigen::MatrixXd im_sym = 0.5 * (im + im.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(im_sym);
    out.min_eig_im = eig.eigenvalues().minCoeff();
    return out;
}

} // namespace abeljac
