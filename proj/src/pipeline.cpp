#include "abeljac/pipeline.hpp"

namespace abeljac {

Pipeline build_pipeline(const HyperellipticCurve& curve, const Settings& settings) {
    Pipeline pipe;
    pipe.curve = curve;
    pipe.settings = settings;
    pipe.basis = holomorphic_basis(curve);
    pipe.homology = symplectic_basis(curve, settings.clearance_fraction);
    pipe.periods = period_matrices(curve, pipe.basis, pipe.homology, pipe.quad());
    pipe.riemann = riemann_matrix(pipe.periods.A, pipe.periods.B, settings.a_condition_max);
    pipe.lattice = make_lattice(pipe.periods.A, pipe.periods.B);
    return pipe;
}

Pipeline build_pipeline(const std::vector<Complex>& coeffs, const Settings& settings) {
    return build_pipeline(new_curve(coeffs, settings.degeneracy_threshold), settings);
}

RiemannReport verify_riemann_relations(const Pipeline& pipe) {
    RiemannReport report;
    report.a_condition = condition_number(pipe.periods.A);
    report.symmetry_defect = pipe.riemann.symmetry_defect;
    report.min_eig_im = pipe.riemann.min_eig_im;
    report.rank_2g_margin = pipe.lattice.min_singular;

    // positive definiteness via a symmetric factorization, as in the theorem
    const Eigen::MatrixXd im = pipe.riemann.Omega.imag();
    const Eigen::MatrixXd im_sym = 0.5 * (im + im.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(im_sym);
    report.spd_factorization_ok = llt.info() == Eigen::Success;

    const Settings& s = pipe.settings;
    const double im_scale = im_sym.cwiseAbs().maxCoeff();
    report.pass = report.a_condition < s.a_condition_max &&
                  report.symmetry_defect < s.symmetry_tol && report.spd_factorization_ok &&
                  report.min_eig_im > 1e-10 * im_scale &&
                  report.rank_2g_margin > s.rank_margin_tol;
    return report;
}

RiemannReport verify_riemann_relations(const std::vector<Complex>& coeffs,
                                       const Settings& settings) {
    return verify_riemann_relations(build_pipeline(coeffs, settings));
}

} // namespace abeljac
