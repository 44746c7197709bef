#ifndef ABELJAC_VERIFY_HPP
#define ABELJAC_VERIFY_HPP

#include "abeljac/abel.hpp"

namespace abeljac {

// Aggregate verification: Riemann bilinear relations, Abel forward on a
// generated principal-divisor family, base-point independence, and d log
// period integrality. Sampling is driven by settings.seed.
struct VerifyReport {
    RiemannReport riemann;

    int abel_count = 0;
    double abel_max_distance = 0.0;
    bool abel_pass = false;

    int base_point_count = 0;
    double base_point_max_distance = 0.0;
    bool base_point_pass = false;

    int dlog_count = 0;
    double dlog_max_defect = 0.0;
    bool dlog_pass = false;

    bool pass = false;
};

VerifyReport run_verify(const Pipeline& pipe);

// Seeded family of principal-divisor generators: mixes of (x - c)^+-1 and
// y^+-1 with c drawn away from the branch set.
std::vector<RationalFunctionSpec> principal_family(const HyperellipticCurve& curve, int count,
                                                   Rng& rng);

// Seeded squarefree curve with the given genus: monic f with roots drawn in
// the unit disk at pairwise separation >= min_separation.
HyperellipticCurve sample_curve(int genus, Rng& rng, double min_separation = 0.15);

} // namespace abeljac

#endif
