#ifndef ABELJAC_PIPELINE_HPP
#define ABELJAC_PIPELINE_HPP

#include "abeljac/curve.hpp"
#include "abeljac/homology.hpp"
#include "abeljac/lattice.hpp"
#include "abeljac/periods.hpp"
#include "abeljac/settings.hpp"

namespace abeljac {

// Everything downstream of the curve: homology basis, period matrices,
// Riemann matrix, period lattice. Built once, shared by the Abel-Jacobi
// operations and the verification suites.
struct Pipeline {
    HyperellipticCurve curve;
    DifferentialBasis basis;
    SymplecticBasis homology;
    PeriodMatrices periods;
    RiemannMatrix riemann;
    PeriodLattice lattice;
    Settings settings;

    QuadOptions quad() const {
        return QuadOptions{settings.gl_order, settings.max_depth, settings.quad_tol};
    }
};

Pipeline build_pipeline(const HyperellipticCurve& curve, const Settings& settings = {});
Pipeline build_pipeline(const std::vector<Complex>& coeffs, const Settings& settings = {});

RiemannReport verify_riemann_relations(const Pipeline& pipe);
RiemannReport verify_riemann_relations(const std::vector<Complex>& coeffs,
                                       const Settings& settings = {});

} // namespace abeljac

#endif
