#include "abeljac/abel.hpp"

#include <algorithm>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXcd to_vector(const std::vector<Complex>& v) {
    Eigen::VectorXcd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

bool sheets_agree(Complex y1, Complex y2) {
    return y1.real() * y2.real() + y1.imag() * y2.imag() > 0.0;
}

// small loop around one branch point, attached at x_p and returning to x_p;
// traversing it flips the sheet
XPath sheet_flip_loop(const HyperellipticCurve& curve, const CurvePoint& p,
                      double clearance_fraction) {
    const int idx = curve.nearest_branch(p.x);
    const Complex e = curve.branch_points[idx];
    const double R = std::min(clearance_fraction * curve.discriminant_margin,
                              0.7 * std::abs(p.x - e));
    const Complex w = e + R * (p.x - e) / std::abs(p.x - e);
    const CurvePoint wp = finite_point(curve, w, +1);

    XPath leg = plan_path(curve, p, wp, clearance_fraction);
    XPath loop = leg;
    loop.append(branch_circle(curve, idx, R, std::arg(w - e)));
    loop.append(leg.reversed());
    return loop;
}

} // namespace

JacobianPoint make_jacobian_point(const PeriodLattice& lattice, const Eigen::VectorXcd& value) {
    JacobianPoint p;
    p.value = value;
    p.reduced = reduce_mod_lattice(lattice, value);
    return p;
}

JacobianPoint abel_point(const Pipeline& pipe, const CurvePoint& O, const CurvePoint& P) {
    const HyperellipticCurve& curve = pipe.curve;
    if (O.is_infinity() || P.is_infinity())
        throw EndpointAtInfinityError("abel_point: infinity is handled via divisors");
    const int g = curve.genus;
    if (same_point(O, P))
        return make_jacobian_point(pipe.lattice, Eigen::VectorXcd::Zero(g));

    const double fraction = pipe.settings.clearance_fraction;
    XPath path = plan_path(curve, O, P, fraction);

    std::optional<Complex> y_start;
    if (!O.is_branch()) y_start = y_of(curve, O);

    BasisIntegral integral = integrate_basis(curve, path, y_start, pipe.quad());
    Eigen::VectorXcd value = to_vector(integral.values);

    if (!P.is_branch()) {
        const Complex y_target = y_of(curve, P);
        if (!sheets_agree(integral.y_end, y_target)) {
            if (O.is_branch()) {
                // the sigma-image of the path also runs O -> P and negates
                // every basis integral
                value = -value;
            } else {
                XPath flip = sheet_flip_loop(curve, P, fraction);
                const BasisIntegral extra =
                    integrate_basis(curve, flip, integral.y_end, pipe.quad());
                if (!sheets_agree(extra.y_end, y_target))
                    throw NumericError("abel_point: sheet correction failed");
                value += to_vector(extra.values);
            }
        }
    }
    return make_jacobian_point(pipe.lattice, value);
}

Divisor eliminate_infinity(const HyperellipticCurve& curve, const Divisor& D) {
    const int m_inf = D.multiplicity_at_infinity();
    if (m_inf == 0) return D;

    Divisor out = D;
    int k = m_inf;
    if (k % 2 != 0) {
        // adjust by div(y), the only odd-infinity principal divisor in the
        // family; the coefficient moves the infinity multiplicity toward zero
        const Divisor div_y = divisor_of_function(curve, RationalFunctionSpec::ycoord());
        const int c = k < 0 ? -1 : 1;
        Divisor scaled;
        for (const auto& entry : div_y.entries) scaled.add(entry.point, c * entry.multiplicity);
        out.add(scaled);
        k = out.multiplicity_at_infinity();
    }
    if (k != 0) {
        // 2*inf ~ 2*(e_1, 0) via div(x - e_1)
        const Divisor div_xe =
            divisor_of_function(curve, RationalFunctionSpec::linear(curve.branch_points[0]));
        Divisor scaled;
        for (const auto& entry : div_xe.entries) scaled.add(entry.point, (k / 2) * entry.multiplicity);
        out.add(scaled);
    }
    if (out.multiplicity_at_infinity() != 0)
        throw NumericError("eliminate_infinity: infinity multiplicity survived");
    return out;
}

JacobianPoint abel_divisor(const Pipeline& pipe, const CurvePoint& O, const Divisor& D) {
    if (D.degree() != 0)
        throw NonzeroDegreeError("abel_divisor: the map is defined on degree-zero divisors");
    const Divisor finite = eliminate_infinity(pipe.curve, D);
    Eigen::VectorXcd value = Eigen::VectorXcd::Zero(pipe.curve.genus);
    for (const auto& entry : finite.entries)
        value += static_cast<double>(entry.multiplicity) * abel_point(pipe, O, entry.point).value;
    return make_jacobian_point(pipe.lattice, value);
}

CurvePoint generic_base_point(const HyperellipticCurve& curve) {
    for (int k = 0;; ++k) {
        const Complex x = 1.25 * curve.root_scale *
                          std::polar(1.0 + 0.07 * k, 0.583 + 0.71 * static_cast<double>(k));
        if (curve.distance_to_branch(x) >= 0.3 * curve.discriminant_margin)
            return finite_point(curve, x, +1);
    }
}

PrincipalCheck check_principal(const Pipeline& pipe, const RationalFunctionSpec& h, double tol) {
    const Divisor D = divisor_of_function(pipe.curve, h);
    const CurvePoint O = generic_base_point(pipe.curve);
    const JacobianPoint u = abel_divisor(pipe, O, D);
    PrincipalCheck out;
    out.distance = lattice_distance(pipe.lattice, u.value);
    out.pass = out.distance < tol;
    return out;
}

Eigen::VectorXcd base_point_shift_raw(const Pipeline& pipe, const CurvePoint& O,
                                      const CurvePoint& Oprime, const Divisor& D) {
    const Divisor finite = eliminate_infinity(pipe.curve, D);
    Eigen::VectorXcd diff = Eigen::VectorXcd::Zero(pipe.curve.genus);
    for (const auto& entry : finite.entries) {
        diff += static_cast<double>(entry.multiplicity) *
                (abel_point(pipe, Oprime, entry.point).value -
                 abel_point(pipe, O, entry.point).value);
    }
    return diff;
}

double base_point_shift(const Pipeline& pipe, const CurvePoint& O, const CurvePoint& Oprime,
                        const Divisor& D) {
    if (D.degree() != 0)
        throw NonzeroDegreeError("base_point_shift: degree-zero divisors only");
    return lattice_distance(pipe.lattice, base_point_shift_raw(pipe, O, Oprime, D));
}

DlogPeriods dlog_periods(const Pipeline& pipe, const RationalFunctionSpec& h) {
    const HyperellipticCurve& curve = pipe.curve;
    const int g = curve.genus;
    const Complex two_pi_i(0.0, 2.0 * kPi);

    // replan is not possible on a fixed homology basis; demand real clearance
    for (const auto& factor : h.factors) {
        if (factor.kind != RationalFactor::Kind::Linear) continue;
        for (const auto& cycle : pipe.homology.raw)
            for (const auto& pt : cycle.flat_x)
                if (std::abs(pt - factor.c) < 0.25 * cycle.path.clearance)
                    throw PoleOnPathError("dlog_periods: zero/pole too close to a cycle");
    }

    Eigen::VectorXcd raw(2 * g);
    for (int r = 0; r < 2 * g; ++r)
        raw(r) = integrate_dlog(curve, pipe.homology.raw[r].path, h, pipe.quad()) / two_pi_i;

    DlogPeriods out;
    out.integers.resize(2 * g);
    out.defects.resize(2 * g);
    for (int i = 0; i < 2 * g; ++i) {
        Complex v = 0.0;
        for (int j = 0; j < 2 * g; ++j)
            v += static_cast<double>(pipe.homology.transform(i, j)) * raw(j);
        const long long n = std::llround(v.real());
        out.integers[i] = n;
        out.defects[i] = std::abs(v - static_cast<double>(n));
        out.max_defect = std::max(out.max_defect, out.defects[i]);
    }
    return out;
}

Eigen::MatrixXcd inversion_jacobian(const HyperellipticCurve& curve,
                                    const std::vector<CurvePoint>& base) {
    const int g = curve.genus;
    Eigen::MatrixXcd J(g, g);
    for (int i = 1; i <= g; ++i)
        for (int j = 0; j < g; ++j) J(i - 1, j) = evaluate_differential(curve, i, base[j]);
    return J;
}

namespace {

struct ChartState {
    std::vector<double> radius;   // chart radii around the base x's
    std::vector<Complex> base_x;  // x(P_j)
    std::vector<Complex> base_y;  // y(P_j)
};

// F and the y-values at the current chart coordinates, by straight-segment
// integration inside each (branch-free, convex) chart disk
void eval_F(const Pipeline& pipe, const ChartState& charts, const Eigen::VectorXcd& z,
            Eigen::VectorXcd& F, std::vector<Complex>& y_at_z) {
    const HyperellipticCurve& curve = pipe.curve;
    const int g = curve.genus;
    F.setZero(g);
    for (int j = 0; j < g; ++j) {
        if (std::abs(z(j) - charts.base_x[j]) == 0.0) {
            y_at_z[j] = charts.base_y[j];
            continue;
        }
        XPath seg;
        seg.segments.push_back(PathSeg::line(charts.base_x[j], z(j)));
        const BasisIntegral integral =
            integrate_basis(curve, seg, charts.base_y[j], pipe.quad());
        for (int i = 0; i < g; ++i) F(i) += integral.values[i];
        y_at_z[j] = integral.y_end;
    }
}

} // namespace

Eigen::VectorXcd inversion_F(const Pipeline& pipe, const std::vector<CurvePoint>& base,
                             const Eigen::VectorXcd& z) {
    const int g = pipe.curve.genus;
    ChartState charts;
    charts.radius.resize(g);
    charts.base_x.resize(g);
    charts.base_y.resize(g);
    for (int j = 0; j < g; ++j) {
        charts.base_x[j] = base[j].x;
        charts.base_y[j] = y_of(pipe.curve, base[j]);
        charts.radius[j] =
            pipe.settings.chart_fraction * pipe.curve.distance_to_branch(base[j].x);
    }
    Eigen::VectorXcd F(g);
    std::vector<Complex> y(g);
    eval_F(pipe, charts, z, F, y);
    return F;
}

InversionResult jacobi_invert_local(const Pipeline& pipe, const std::vector<CurvePoint>& base,
                                    const Eigen::VectorXcd& xi, int max_iter, double tol) {
    const HyperellipticCurve& curve = pipe.curve;
    const int g = curve.genus;
    if (static_cast<int>(base.size()) != g)
        throw DimensionMismatchError("jacobi_invert_local: need g base points");
    if (xi.size() != g)
        throw DimensionMismatchError("jacobi_invert_local: target dimension mismatch");
    for (const auto& p : base)
        if (!p.is_finite() || p.is_branch())
            throw InputError("jacobi_invert_local: base points must be finite and off the branch set");

    const Eigen::MatrixXcd J0 = inversion_jacobian(curve, base);
    if (!(condition_number(J0) < pipe.settings.jacobian_condition_max))
        throw SingularJacobianAtBaseError(
            "jacobi_invert_local: base tuple Jacobian is ill-conditioned");

    Eigen::VectorXcd z(g);
    std::vector<Complex> y_at_z(g);
    for (int j = 0; j < g; ++j) {
        z(j) = base[j].x;
        y_at_z[j] = y_of(curve, base[j]);
    }

    // F accumulated incrementally: each accepted step integrates the short
    // straight segments from the previous points, which re-centers the
    // simply connected chart (a branch-free disk) at the current points
    Eigen::VectorXcd F = Eigen::VectorXcd::Zero(g);
    double residual = (F - xi).norm();

    InversionResult result;
    result.iterations = 0;

    while (residual >= tol) {
        if (result.iterations >= max_iter)
            throw NoConvergenceError("jacobi_invert_local: Newton did not converge");

        Eigen::MatrixXcd J(g, g);
        for (int j = 0; j < g; ++j) {
            Complex pw = 1.0;
            for (int i = 0; i < g; ++i) {
                J(i, j) = pw / y_at_z[j];
                pw *= z(j);
            }
        }
        const Eigen::VectorXcd step = J.partialPivLu().solve(xi - F);

        // trust region: the chart around the current point
        double lambda = 1.0;
        for (int j = 0; j < g; ++j) {
            const double room = pipe.settings.chart_fraction * curve.distance_to_branch(z(j));
            const double want = std::abs(step(j));
            if (want > 1e-300 && lambda * want > room) lambda = room / want;
        }
        if (!(lambda > 1e-6))
            throw LeftChartError("jacobi_invert_local: step exits the chart");

        bool accepted = false;
        for (int halving = 0; halving <= 8; ++halving, lambda *= 0.5) {
            const Eigen::VectorXcd z_try = z + lambda * step;
            Eigen::VectorXcd F_try = F;
            std::vector<Complex> y_try = y_at_z;
            bool ok = true;
            for (int j = 0; j < g && ok; ++j) {
                if (std::abs(z_try(j) - z(j)) == 0.0) continue;
                if (curve.distance_to_branch(z_try(j)) < 1e-3 * curve.discriminant_margin) {
                    ok = false;
                    break;
                }
                XPath seg;
                seg.segments.push_back(PathSeg::line(z(j), z_try(j)));
                const BasisIntegral inc = integrate_basis(curve, seg, y_at_z[j], pipe.quad());
                for (int i = 0; i < g; ++i) F_try(i) += inc.values[i];
                y_try[j] = inc.y_end;
            }
            if (!ok) continue;
            const double r_try = (F_try - xi).norm();
            if (r_try < residual) {
                z = z_try;
                F = F_try;
                y_at_z = y_try;
                residual = r_try;
                accepted = true;
                break;
            }
        }
        ++result.iterations;
        if (!accepted)
            throw NoConvergenceError("jacobi_invert_local: damping failed to reduce the residual");
    }

    result.chart_values = z;
    result.F = F;
    result.residual = residual;
    result.points.reserve(g);
    for (int j = 0; j < g; ++j) {
        const Complex y_ref = curve.y_reference(z(j));
        const int sheet = sheets_agree(y_at_z[j], y_ref) ? +1 : -1;
        result.points.push_back(finite_point(curve, z(j), sheet));
    }
    return result;
}

CurvePoint sample_point(const HyperellipticCurve& curve, Rng& rng) {
    for (;;) {
        const Complex x = rng.in_disk(1.5 * curve.root_scale);
        if (curve.distance_to_branch(x) < 0.3 * curve.discriminant_margin) continue;
        return finite_point(curve, x, rng.sign());
    }
}

std::vector<CurvePoint> sample_base_tuple(const Pipeline& pipe, Rng& rng, int max_draws) {
    const int g = pipe.curve.genus;
    // keep the tuple with the largest Newton step capacity: the smallest
    // singular value of the Jacobian times the smallest chart radius bounds
    // the target size the inversion can absorb in one step
    std::vector<CurvePoint> best;
    double best_score = 0.0;
    for (int attempt = 0; attempt < max_draws; ++attempt) {
        std::vector<CurvePoint> base;
        base.reserve(g);
        bool distinct = true;
        for (int j = 0; j < g; ++j) {
            const CurvePoint p = sample_point(pipe.curve, rng);
            for (const auto& q : base)
                if (std::abs(p.x - q.x) < 1e-2 * pipe.curve.root_scale) distinct = false;
            base.push_back(p);
        }
        if (!distinct) continue;
        const Eigen::MatrixXcd J = inversion_jacobian(pipe.curve, base);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
        const double sigma_min = svd.singularValues()(g - 1);
        const double sigma_max = svd.singularValues()(0);
        if (!(sigma_max / sigma_min < pipe.settings.jacobian_condition_max)) continue;
        double radius = std::numeric_limits<double>::infinity();
        for (const auto& p : base)
            radius = std::min(radius,
                              pipe.settings.chart_fraction * pipe.curve.distance_to_branch(p.x));
        const double score = sigma_min * radius;
        if (score > best_score) {
            best_score = score;
            best = base;
        }
    }
    if (best.empty())
        throw SingularJacobianAtBaseError("sample_base_tuple: no well-conditioned tuple found");
    return best;
}

EmbeddingReport embedding_spot_check(const Pipeline& pipe, const CurvePoint& O, int sample_size,
                                     Rng& rng, double distance_tol, double differential_tol) {
    const HyperellipticCurve& curve = pipe.curve;
    const int g = curve.genus;

    EmbeddingReport report;
    report.pairs = sample_size;
    report.min_pair_distance = std::numeric_limits<double>::infinity();
    report.min_max_differential = std::numeric_limits<double>::infinity();

    for (int n = 0; n < sample_size; ++n) {
        CurvePoint P = sample_point(curve, rng);
        CurvePoint Q = sample_point(curve, rng);
        while (same_point(P, Q, 1e-3 * curve.root_scale)) Q = sample_point(curve, rng);

        const JacobianPoint uP = abel_point(pipe, O, P);
        const JacobianPoint uQ = abel_point(pipe, O, Q);
        const double d = lattice_distance(pipe.lattice, uP.value - uQ.value);
        report.min_pair_distance = std::min(report.min_pair_distance, d);

        for (const CurvePoint& pt : {P, Q}) {
            double max_phi = 0.0;
            for (int k = 1; k <= g; ++k)
                max_phi = std::max(max_phi, std::abs(evaluate_differential(curve, k, pt)));
            report.min_max_differential = std::min(report.min_max_differential, max_phi);
        }
    }
    report.pass = report.min_pair_distance > distance_tol &&
                  report.min_max_differential > differential_tol;
    return report;
}

} // namespace abeljac
