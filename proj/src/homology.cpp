#include "abeljac/homology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// left offset of a C^1 chain of lines and arcs (tangent junctions stay tangent)
std::vector<PathSeg> offset_left(const std::vector<PathSeg>& spine, double delta) {
    std::vector<PathSeg> out;
    out.reserve(spine.size());
    for (const auto& seg : spine) {
        if (seg.kind == PathSeg::Kind::Line) {
            const Complex dir = (seg.b - seg.a) / std::abs(seg.b - seg.a);
            const Complex n = Complex(0.0, 1.0) * dir * delta;
            out.push_back(PathSeg::line(seg.a + n, seg.b + n));
        } else {
            // ccw arcs have the left normal pointing at the center
            const double r =
                seg.theta1 > seg.theta0 ? seg.radius - delta : seg.radius + delta;
            if (r <= 0.0) throw NumericError("build_cycles: offset radius collapsed");
            out.push_back(PathSeg::arc(seg.center, r, seg.theta0, seg.theta1));
        }
    }
    return out;
}

// closed counterclockwise boundary of the delta-neighborhood of a
// branch-to-branch spine: right rail, far cap, left rail reversed, near cap
XPath tube_around(const HyperellipticCurve& curve, const XPath& spine, double delta) {
    const auto& segs = spine.segments;
    const Complex e0 = segs.front().start();
    const Complex e1 = segs.back().end();
    const Complex d0 = segs.front().deriv(0.0) / std::abs(segs.front().deriv(0.0));
    const Complex d1 = segs.back().deriv(1.0) / std::abs(segs.back().deriv(1.0));
    const double th0 = std::arg(d0), th1 = std::arg(d1);

    XPath tube;
    auto push_rail = [&tube](std::vector<PathSeg> rail) {
        for (auto& seg : rail) {
            seg.branch_terminal_start = seg.branch_terminal_end = false;
            tube.segments.push_back(seg);
        }
    };

    push_rail(offset_left(segs, -delta));
    tube.segments.push_back(PathSeg::arc(e1, delta, th1 - kPi / 2.0, th1 + kPi / 2.0));
    {
        auto left = offset_left(segs, +delta);
        std::reverse(left.begin(), left.end());
        for (auto& seg : left) seg = seg.reversed();
        push_rail(std::move(left));
    }
    tube.segments.push_back(PathSeg::arc(e0, delta, th0 + kPi / 2.0, th0 + 3.0 * kPi / 2.0));

    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& e : curve.branch_points)
        for (const auto& pt : flatten(tube)) clearance = std::min(clearance, std::abs(pt - e));
    tube.clearance = clearance;
    return tube;
}

} // namespace

std::vector<Cycle> build_cycles(const HyperellipticCurve& curve, double clearance_fraction) {
    const int g = curve.genus;
    const double R = clearance_fraction * curve.discriminant_margin;
    std::vector<Cycle> cycles;
    cycles.reserve(2 * g);

    for (int i = 0; i < 2 * g; ++i) {
        const CurvePoint from = branch_point_index(curve, i);
        const CurvePoint to = branch_point_index(curve, i + 1);
        const XPath spine = plan_path(curve, from, to, clearance_fraction);
        // alternating tube widths keep crossings of adjacent cycles transversal
        const double delta = (i % 2 == 0 ? 0.55 : 0.38) * R;

        Cycle cycle;
        cycle.pair_index = i;
        cycle.path = tube_around(curve, spine, delta);
        cycle.flat_x = flatten(cycle.path);
        cycle.base_y = curve.y_reference(cycle.path.start());

        cycle.flat_y.resize(cycle.flat_x.size());
        cycle.flat_y[0] = cycle.base_y;
        for (std::size_t v = 1; v < cycle.flat_x.size(); ++v)
            cycle.flat_y[v] = continue_y_segment(curve, cycle.flat_x[v - 1], cycle.flat_x[v],
                                                 cycle.flat_y[v - 1]);

        // closed on the surface: y returns to base_y after the full loop
        if (std::abs(cycle.flat_y.back() - cycle.base_y) >
            1e-6 * std::max(1.0, std::abs(cycle.base_y)))
            throw NumericError("build_cycles: realized cycle is not closed on the surface");

        const auto winding = enclosed_branch_parity(curve, cycle.path);
        if (winding.odd_parity || winding.per_branch[i] != 1 || winding.per_branch[i + 1] != 1 ||
            winding.total != 2)
            throw NumericError("build_cycles: tube does not enclose exactly its branch pair");

        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

long long intersection_number(const HyperellipticCurve& curve, const Cycle& c1, const Cycle& c2) {
    long long total = 0;
    const auto& x1 = c1.flat_x;
    const auto& x2 = c2.flat_x;
    for (std::size_t i = 0; i + 1 < x1.size(); ++i) {
        const Complex p = x1[i], u = x1[i + 1] - x1[i];
        for (std::size_t j = 0; j + 1 < x2.size(); ++j) {
            const Complex q = x2[j], v = x2[j + 1] - x2[j];
            const double den = cross(u, v);
            const Complex w = q - p;
            const double scale = std::abs(u) * std::abs(v);
            if (std::abs(den) <= 1e-14 * scale) {
                // parallel edges: ambiguous only if they actually overlap
                if (std::abs(cross(w, u)) <= 1e-12 * std::abs(u) * std::max(1.0, std::abs(w))) {
                    const double t0 = (w.real() * u.real() + w.imag() * u.imag()) / std::norm(u);
                    const double t1 =
                        t0 + (v.real() * u.real() + v.imag() * u.imag()) / std::norm(u);
                    if (std::max(0.0, std::min(t0, t1)) < std::min(1.0, std::max(t0, t1)) - 1e-9)
                        throw AmbiguousCrossingError(
                            "intersection_number: overlapping parallel edges");
                }
                continue;
            }
            const double t = cross(w, v) / den;
            const double s = cross(w, u) / den;
            if (t <= -1e-9 || t >= 1.0 + 1e-9 || s <= -1e-9 || s >= 1.0 + 1e-9) continue;
            if (t < 1e-9 || t > 1.0 - 1e-9 || s < 1e-9 || s > 1.0 - 1e-9)
                throw AmbiguousCrossingError(
                    "intersection_number: crossing too close to an edge endpoint");
            // sheet of each lift at the crossing, continued from the edge start
            const Complex xc = p + t * u;
            const Complex y1 = continue_y_segment(curve, x1[i], xc, c1.flat_y[i]);
            const Complex y2 = continue_y_segment(curve, x2[j], xc, c2.flat_y[j]);
            if (y1.real() * y2.real() + y1.imag() * y2.imag() > 0.0)
                total += den > 0.0 ? 1 : -1;
        }
    }
    return total;
}

IntersectionMatrix intersection_matrix(const HyperellipticCurve& curve,
                                       const std::vector<Cycle>& cycles) {
    const int n = static_cast<int>(cycles.size());
    IntersectionMatrix out;
    out.M = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const long long m = intersection_number(curve, cycles[i], cycles[j]);
            out.M(i, j) = m;
            out.M(j, i) = -m;
        }
    }
    return out;
}

long long integer_determinant(IntMat m) {
    // Bareiss fraction-free elimination
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1;
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m(r, k) != 0) {
                    p = r;
                    break;
                }
            if (p < 0) return 0;
            m.row(k).swap(m.row(p));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMat standard_symplectic_form(int g) {
    IntMat J = IntMat::Zero(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        J(i, g + i) = 1;
        J(g + i, i) = -1;
    }
    return J;
}

IntMat symplectic_normalize(const IntMat& M0) {
    const int n = static_cast<int>(M0.rows());
    if (n == 0 || n % 2 != 0 || M0.cols() != n)
        throw InputError("symplectic_normalize: matrix must be 2g x 2g");
    if (M0 != (-M0.transpose()).eval())
        throw InputError("symplectic_normalize: matrix must be antisymmetric");
    const long long det = integer_determinant(M0);
    if (det != 1 && det != -1)
        throw NotUnimodularError("symplectic_normalize: input cycles are not a basis");

    const int g = n / 2;
    IntMat M = M0;
    IntMat T = IntMat::Identity(n, n);

    auto row_op = [&](int r, int s, long long c) {
        // row r += c * row s, and the matching column operation
        M.row(r) += c * M.row(s);
        M.col(r) += c * M.col(s);
        T.row(r) += c * T.row(s);
    };
    auto swap_op = [&](int r, int s) {
        M.row(r).swap(M.row(s));
        M.col(r).swap(M.col(s));
        T.row(r).swap(T.row(s));
    };

    std::vector<bool> used(n, false);
    std::vector<std::pair<int, int>> pairs;

    for (int count = 0; count < g; ++count) {
        for (;;) {
            // smallest nonzero entry among unused rows/columns
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = 0; i < n; ++i) {
                if (used[i]) continue;
                for (int j = 0; j < n; ++j) {
                    if (used[j] || i == j || M(i, j) == 0) continue;
                    if (pi < 0 || std::llabs(M(i, j)) < best) {
                        best = std::llabs(M(i, j));
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi < 0) throw NotUnimodularError("symplectic_normalize: form degenerated");

            const long long m = M(pi, pj);
            bool remainder = false;
            for (int r = 0; r < n && !remainder; ++r) {
                if (used[r] || r == pi || r == pj) continue;
                if (M(r, pj) != 0) {
                    const long long q = std::llround(static_cast<double>(M(r, pj)) /
                                                     static_cast<double>(m));
                    if (q != 0) row_op(r, pi, -q);
                    if (M(r, pj) != 0) remainder = true;
                }
                if (!remainder && M(r, pi) != 0) {
                    const long long q = std::llround(static_cast<double>(M(r, pi)) /
                                                     static_cast<double>(M(pj, pi)));
                    if (q != 0) row_op(r, pj, -q);
                    if (M(r, pi) != 0) remainder = true;
                }
            }
            if (remainder) continue; // a smaller pivot appeared; rescan

            if (m == -1) {
                swap_op(pi, pj); // M(pi, pj) becomes +1
                pairs.emplace_back(pi, pj);
            } else if (m == 1) {
                pairs.emplace_back(pi, pj);
            } else {
                throw NotUnimodularError("symplectic_normalize: pivot gcd exceeds 1");
            }
            used[pairs.back().first] = used[pairs.back().second] = true;
            break;
        }
    }

    // reorder rows to (a_1..a_g, b_1..b_g)
    IntMat Tfinal(n, n);
    for (int k = 0; k < g; ++k) {
        Tfinal.row(k) = T.row(pairs[k].first);
        Tfinal.row(g + k) = T.row(pairs[k].second);
    }

    if ((Tfinal * M0 * Tfinal.transpose()).eval() != standard_symplectic_form(g))
        throw NotUnimodularError("symplectic_normalize: verification failed");
    return Tfinal;
}

SymplecticBasis symplectic_basis(const HyperellipticCurve& curve, double clearance_fraction) {
    SymplecticBasis basis;
    basis.g = curve.genus;
    basis.raw = build_cycles(curve, clearance_fraction);
    basis.raw_inter = intersection_matrix(curve, basis.raw);
    basis.transform = symplectic_normalize(basis.raw_inter.M);
    return basis;
}

} // namespace abeljac
