#include "abeljac/verify.hpp"

#include <algorithm>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

// c values for (x - c) factors: away from the branch set and from the cycle
// contours, so divisors stay integrable and d log h has clearance
Complex sample_factor_point(const Pipeline& pipe, Rng& rng) {
    const HyperellipticCurve& curve = pipe.curve;
    for (;;) {
        const Complex c = rng.in_disk(1.4 * curve.root_scale);
        if (curve.distance_to_branch(c) < 0.35 * curve.discriminant_margin) continue;
        bool clear = true;
        for (const auto& cycle : pipe.homology.raw) {
            for (const auto& pt : cycle.flat_x)
                if (std::abs(pt - c) < 0.3 * cycle.path.clearance) clear = false;
            if (!clear) break;
        }
        if (clear) return c;
    }
}

} // namespace

std::vector<RationalFunctionSpec> principal_family(const HyperellipticCurve& curve, int count,
                                                   Rng& rng) {
    std::vector<RationalFunctionSpec> family;
    family.reserve(count);
    for (int n = 0; n < count; ++n) {
        RationalFunctionSpec h;
        switch (n % 5) {
            case 0: // single linear factor
                h = RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), rng.sign());
                break;
            case 1: { // quotient of two linears (no support at infinity)
                h = RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), +1);
                h.times(RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), -1));
                break;
            }
            case 2: // pure y
                h = RationalFunctionSpec::ycoord(rng.sign());
                break;
            case 3: { // y mixed with a linear factor
                h = RationalFunctionSpec::ycoord(rng.sign());
                h.times(RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale),
                                                     rng.sign()));
                break;
            }
            default: { // three-factor mix
                h = RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), +1);
                h.times(RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), +1));
                h.times(RationalFunctionSpec::linear(rng.in_disk(1.4 * curve.root_scale), -2));
                break;
            }
        }
        // keep linear factors off the branch set
        bool ok = true;
        for (const auto& factor : h.factors)
            if (factor.kind == RationalFactor::Kind::Linear &&
                curve.distance_to_branch(factor.c) < 0.35 * curve.discriminant_margin)
                ok = false;
        if (!ok) {
            --n;
            continue;
        }
        family.push_back(std::move(h));
    }
    return family;
}

HyperellipticCurve sample_curve(int genus, Rng& rng, double min_separation) {
    const int n = 2 * genus + 1;
    for (;;) {
        std::vector<Complex> roots;
        roots.reserve(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            // up to 64 attempts to place each root away from the others
            bool placed = false;
            for (int attempt = 0; attempt < 64; ++attempt) {
                const Complex r = rng.in_disk(1.0);
                bool clear = true;
                for (const auto& other : roots)
                    if (std::abs(r - other) < min_separation) clear = false;
                if (clear) {
                    roots.push_back(r);
                    placed = true;
                    break;
                }
            }
            if (!placed) ok = false;
        }
        if (!ok) continue;

        // monic expansion of prod (x - r_i), ascending coefficients
        std::vector<Complex> coeffs{1.0};
        for (const auto& r : roots) {
            coeffs.push_back(0.0);
            for (std::size_t k = coeffs.size() - 1; k >= 1; --k)
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            coeffs[0] = -r * coeffs[0];
        }
        return new_curve(coeffs);
    }
}

VerifyReport run_verify(const Pipeline& pipe) {
    VerifyReport report;
    report.riemann = verify_riemann_relations(pipe);

    Rng rng(pipe.settings.seed);
    const double tol = pipe.settings.membership_tol;

    // Abel forward on a principal-divisor family
    const auto family = principal_family(pipe.curve, 10, rng);
    report.abel_count = static_cast<int>(family.size());
    report.abel_pass = true;
    for (const auto& h : family) {
        const PrincipalCheck check = check_principal(pipe, h, tol);
        report.abel_max_distance = std::max(report.abel_max_distance, check.distance);
        report.abel_pass = report.abel_pass && check.pass;
    }

    // base-point independence on degree-zero divisors
    report.base_point_count = 3;
    report.base_point_pass = true;
    for (int n = 0; n < report.base_point_count; ++n) {
        const CurvePoint O = sample_point(pipe.curve, rng);
        const CurvePoint Oprime = sample_point(pipe.curve, rng);
        const CurvePoint P = sample_point(pipe.curve, rng);
        Divisor D;
        D.add(P, 1);
        D.add(involution(P), 1);
        D.add(infinity_point(), -2);
        const double d = base_point_shift(pipe, O, Oprime, D);
        report.base_point_max_distance = std::max(report.base_point_max_distance, d);
        report.base_point_pass = report.base_point_pass && d < tol;
    }

    // d log integrality: one factor outside every cycle (all periods zero),
    // one inside a tube (nonzero winding), one mixed with y
    report.dlog_pass = true;
    bool saw_nonzero = false;
    for (int n = 0; n < 3; ++n) {
        RationalFunctionSpec h;
        if (n == 1) {
            // a point between a consecutive branch pair is enclosed by that
            // pair's tube, giving a nonzero winding
            Complex mid = 0.5 * (pipe.curve.branch_points[0] + pipe.curve.branch_points[1]);
            for (std::size_t j = 0; j + 1 < pipe.curve.branch_points.size(); ++j) {
                const Complex candidate =
                    0.5 * (pipe.curve.branch_points[j] + pipe.curve.branch_points[j + 1]);
                bool clear = true;
                for (const auto& cycle : pipe.homology.raw)
                    for (const auto& pt : cycle.flat_x)
                        if (std::abs(pt - candidate) < 0.3 * cycle.path.clearance) clear = false;
                if (clear) {
                    mid = candidate;
                    break;
                }
            }
            h = RationalFunctionSpec::linear(mid);
        } else {
            h = RationalFunctionSpec::linear(sample_factor_point(pipe, rng));
            if (n == 2) h.times(RationalFunctionSpec::ycoord());
        }
        const DlogPeriods periods = dlog_periods(pipe, h);
        report.dlog_count += static_cast<int>(periods.integers.size());
        report.dlog_max_defect = std::max(report.dlog_max_defect, periods.max_defect);
        report.dlog_pass = report.dlog_pass && periods.max_defect < 1e-8;
        for (const auto& m : periods.integers) saw_nonzero = saw_nonzero || m != 0;
    }
    report.dlog_pass = report.dlog_pass && saw_nonzero;

    report.pass =
        report.riemann.pass && report.abel_pass && report.base_point_pass && report.dlog_pass;
    return report;
}

} // namespace abeljac
