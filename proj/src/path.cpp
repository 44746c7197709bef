#include "abeljac/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abeljac/errors.hpp"
#include "abeljac/quadrature.hpp"

namespace abeljac {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// distance from p to the straight segment [a, b]
double segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * d.real() + (p.imag() - a.imag()) * d.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double angle_in_sweep(double theta, double theta0, double theta1) {
    // returns parameter t in [0,1] if angle theta lies inside the sweep, else -1
    const double sweep = theta1 - theta0;
    if (sweep == 0.0) return -1.0;
    double rel = std::fmod(theta - theta0, 2.0 * kPi);
    if (sweep > 0.0) {
        if (rel < 0.0) rel += 2.0 * kPi;
        return rel <= sweep ? rel / sweep : -1.0;
    }
    if (rel > 0.0) rel -= 2.0 * kPi;
    return rel >= sweep ? rel / sweep : -1.0;
}

double arc_distance(Complex p, Complex center, double radius, double theta0, double theta1) {
    const double rho = std::abs(p - center);
    const double theta = std::arg(p - center);
    if (angle_in_sweep(theta, theta0, theta1) >= 0.0) return std::abs(rho - radius);
    const Complex a = center + radius * std::polar(1.0, theta0);
    const Complex b = center + radius * std::polar(1.0, theta1);
    return std::min(std::abs(p - a), std::abs(p - b));
}

} // namespace

PathSeg PathSeg::line(Complex from, Complex to) {
    PathSeg s;
    s.kind = Kind::Line;
    s.a = from;
    s.b = to;
    return s;
}

PathSeg PathSeg::arc(Complex center, double radius, double theta0, double theta1) {
    PathSeg s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    return s;
}

Complex PathSeg::eval(double t) const {
    if (kind == Kind::Line) return a + t * (b - a);
    return center + radius * std::polar(1.0, theta0 + t * (theta1 - theta0));
}

Complex PathSeg::deriv(double t) const {
    if (kind == Kind::Line) return b - a;
    const double theta = theta0 + t * (theta1 - theta0);
    return Complex(0.0, theta1 - theta0) * radius * std::polar(1.0, theta);
}

double PathSeg::length() const {
    if (kind == Kind::Line) return std::abs(b - a);
    return radius * std::abs(theta1 - theta0);
}

PathSeg PathSeg::reversed() const {
    PathSeg s = *this;
    if (kind == Kind::Line) {
        s.a = b;
        s.b = a;
    } else {
        s.theta0 = theta1;
        s.theta1 = theta0;
    }
    s.branch_terminal_start = branch_terminal_end;
    s.branch_terminal_end = branch_terminal_start;
    return s;
}

Complex XPath::start() const { return segments.front().start(); }
Complex XPath::end() const { return segments.back().end(); }

bool XPath::starts_at_branch() const {
    return !segments.empty() && segments.front().branch_terminal_start;
}

bool XPath::ends_at_branch() const {
    return !segments.empty() && segments.back().branch_terminal_end;
}

double XPath::length() const {
    double L = 0.0;
    for (const auto& s : segments) L += s.length();
    return L;
}

XPath XPath::reversed() const {
    XPath p;
    p.clearance = clearance;
    p.segments.reserve(segments.size());
    for (auto it = segments.rbegin(); it != segments.rend(); ++it)
        p.segments.push_back(it->reversed());
    return p;
}

bool XPath::is_closed(double tol) const {
    if (segments.empty()) return false;
    return std::abs(start() - end()) <= tol;
}

XPath& XPath::append(const XPath& other) {
    if (other.empty()) return *this;
    if (!empty() && std::abs(end() - other.start()) > 1e-9)
        throw InputError("XPath::append: paths do not meet");
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    clearance = clearance < 0.0 ? other.clearance : std::min(clearance, other.clearance);
    return *this;
}

std::vector<Complex> flatten(const XPath& path, double max_arc_step) {
    std::vector<Complex> pts;
    if (path.empty()) return pts;
    pts.push_back(path.start());
    for (const auto& seg : path.segments) {
        if (seg.kind == PathSeg::Kind::Line) {
            pts.push_back(seg.b);
        } else {
            const double sweep = std::abs(seg.theta1 - seg.theta0);
            const int steps = std::max(1, static_cast<int>(std::ceil(sweep / max_arc_step)));
            for (int i = 1; i <= steps; ++i)
                pts.push_back(seg.eval(static_cast<double>(i) / steps));
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// planning

namespace {

// Taut ("rubber band") route from p to q around the branch clearance disks:
// a chain of straight tangent lines and hugging arcs. The realized path is
// C^1 everywhere except at the endpoints, which keeps tube offsets exact.
class TautRouter {
  public:
    TautRouter(const HyperellipticCurve& curve, double radius, Complex p, Complex q)
        : curve_(curve), radius_(radius), p_(p), q_(q) {}

    std::vector<PathSeg> build() {
        std::vector<Hug> hugs;
        for (int guard = 0; guard < 128; ++guard) {
            const auto lines = tangent_lines(hugs);
            int line_index = -1, circle = -1;
            double sigma = 0.0;
            if (!first_violation(lines, line_index, circle, sigma)) return realize(hugs, lines);
            hugs.insert(hugs.begin() + line_index, Hug{circle, sigma});
        }
        throw NoRouteFoundError("plan_path: taut routing did not settle");
    }

  private:
    struct Hug {
        int circle;
        double sigma; // +1: counterclockwise hug, -1: clockwise
    };
    struct TLine {
        Complex a, b;
    };

    double effective_radius(int i) const {
        const Complex e = curve_.branch_points[i];
        double r = radius_;
        r = std::min(r, 0.9 * std::abs(p_ - e));
        r = std::min(r, 0.9 * std::abs(q_ - e));
        return r;
    }

    // tangent point departing from circle (c, r) with hug sign sigma along
    // unit direction d: T = c - sigma * i * r * d
    static Complex hug_point(Complex c, double r, double sigma, Complex d) {
        return c - sigma * Complex(0.0, 1.0) * r * d;
    }

    TLine tangent_point_circle(Complex p, Complex c, double r, double sigma, bool leaving) const {
        const double L = std::abs(p - c);
        if (L <= r)
            throw NoRouteFoundError("plan_path: endpoint inside a clearance disk");
        const double theta = std::acos(std::clamp(r / L, -1.0, 1.0));
        const double phi = std::arg(p - c);
        for (const double sign : {+1.0, -1.0}) {
            const Complex T = c + r * std::polar(1.0, phi + sign * theta);
            if (std::abs(T - p) < 1e-15) continue;
            const Complex d = leaving ? (T - p) / std::abs(T - p) : (p - T) / std::abs(p - T);
            const Complex arc_dir = sigma * Complex(0.0, 1.0) * (T - c) / r;
            if (d.real() * arc_dir.real() + d.imag() * arc_dir.imag() > 0.0)
                return leaving ? TLine{p, T} : TLine{T, p};
        }
        throw NumericError("plan_path: tangent selection failed");
    }

    TLine tangent_circle_circle(Complex c1, double r1, double sigma1, Complex c2, double r2,
                                double sigma2) const {
        const Complex delta = c2 - c1;
        const double m = sigma2 * r2 - sigma1 * r1;
        const double d2 = std::norm(delta) - m * m;
        if (d2 <= 0.0) throw NoRouteFoundError("plan_path: clearance disks block the corridor");
        const Complex d = delta / Complex(std::sqrt(d2), m);
        return {hug_point(c1, r1, sigma1, d), hug_point(c2, r2, sigma2, d)};
    }

    std::vector<TLine> tangent_lines(const std::vector<Hug>& hugs) const {
        std::vector<TLine> lines;
        lines.reserve(hugs.size() + 1);
        if (hugs.empty()) {
            lines.push_back({p_, q_});
            return lines;
        }
        const auto c = [&](const Hug& h) { return curve_.branch_points[h.circle]; };
        const auto r = [&](const Hug& h) { return effective_radius(h.circle); };

        lines.push_back(tangent_point_circle(p_, c(hugs.front()), r(hugs.front()),
                                             hugs.front().sigma, /*leaving=*/true));
        for (std::size_t k = 0; k + 1 < hugs.size(); ++k)
            lines.push_back(tangent_circle_circle(c(hugs[k]), r(hugs[k]), hugs[k].sigma,
                                                  c(hugs[k + 1]), r(hugs[k + 1]),
                                                  hugs[k + 1].sigma));
        lines.push_back(tangent_point_circle(q_, c(hugs.back()), r(hugs.back()),
                                             hugs.back().sigma, /*leaving=*/false));
        return lines;
    }

    bool first_violation(const std::vector<TLine>& lines, int& line_index, int& circle,
                         double& sigma) const {
        for (std::size_t ell = 0; ell < lines.size(); ++ell) {
            const Complex a = lines[ell].a, b = lines[ell].b;
            const Complex d = b - a;
            const double len2 = std::norm(d);
            if (len2 < 1e-30) continue;
            double best_entry = std::numeric_limits<double>::infinity();
            for (int i = 0; i < static_cast<int>(curve_.branch_points.size()); ++i) {
                const Complex e = curve_.branch_points[i];
                const double r = effective_radius(i) * (1.0 - 1e-9);
                if (r <= 0.0) continue;
                const Complex pe = a - e;
                const double bq = (pe.real() * d.real() + pe.imag() * d.imag()) / len2;
                const double cq = (std::norm(pe) - r * r) / len2;
                const double disc = bq * bq - cq;
                if (disc <= 0.0) continue;
                const double sq = std::sqrt(disc);
                const double t1 = -bq - sq, t2 = -bq + sq;
                if (t2 <= 1e-9 || t1 >= 1.0 - 1e-9) continue;
                if (std::max(t1, 0.0) < best_entry) {
                    best_entry = std::max(t1, 0.0);
                    circle = i;
                    // detour on the side away from the center
                    sigma = cross(d, e - a) >= 0.0 ? -1.0 : +1.0;
                }
            }
            if (best_entry < std::numeric_limits<double>::infinity()) {
                line_index = static_cast<int>(ell);
                return true;
            }
        }
        return false;
    }

    std::vector<PathSeg> realize(const std::vector<Hug>& hugs,
                                 const std::vector<TLine>& lines) const {
        std::vector<PathSeg> out;
        for (std::size_t k = 0; k < lines.size(); ++k) {
            if (std::abs(lines[k].b - lines[k].a) > 1e-14)
                out.push_back(PathSeg::line(lines[k].a, lines[k].b));
            if (k < hugs.size()) {
                const Complex c = curve_.branch_points[hugs[k].circle];
                const double r = effective_radius(hugs[k].circle);
                const double sigma = hugs[k].sigma;
                const double ta = std::arg(lines[k].b - c);
                double tb = std::arg(lines[k + 1].a - c);
                if (sigma > 0.0) {
                    while (tb < ta) tb += 2.0 * kPi;
                } else {
                    while (tb > ta) tb -= 2.0 * kPi;
                }
                if (std::abs(tb - ta) > 1e-12) out.push_back(PathSeg::arc(c, r, ta, tb));
            }
        }
        return out;
    }

    const HyperellipticCurve& curve_;
    double radius_;
    Complex p_, q_;
};

double measure_clearance(const HyperellipticCurve& curve, const XPath& path) {
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& seg : path.segments) {
        for (const auto& e : curve.branch_points) {
            if ((seg.branch_terminal_end && std::abs(seg.b - e) < 1e-12) ||
                (seg.branch_terminal_start && std::abs(seg.a - e) < 1e-12))
                continue; // terminal legs touch their own branch point
            const double d = seg.kind == PathSeg::Kind::Line
                                 ? segment_distance(e, seg.a, seg.b)
                                 : arc_distance(e, seg.center, seg.radius, seg.theta0, seg.theta1);
            clearance = std::min(clearance, d);
        }
    }
    return clearance;
}

} // namespace

XPath plan_path(const HyperellipticCurve& curve, const CurvePoint& from, const CurvePoint& to,
                double clearance_fraction) {
    if (from.is_infinity() || to.is_infinity())
        throw EndpointAtInfinityError("plan_path: paths to infinity are not supported");
    if (clearance_fraction >= 0.5)
        throw NoRouteFoundError("plan_path: clearance fraction >= 0.5 blocks all corridors");
    if (same_point(from, to)) return {};

    const double R = clearance_fraction * curve.discriminant_margin;
    TautRouter router(curve, R, from.x, to.x);

    XPath path;
    path.segments = router.build();

    // branch endpoints: split the first/last straight piece so the terminal
    // leg (integrated with the sqrt substitution) stays collinear with it
    if (from.is_branch()) {
        PathSeg& first = path.segments.front();
        if (first.kind != PathSeg::Kind::Line)
            throw NumericError("plan_path: branch start must begin with a straight piece");
        const double len = std::abs(first.b - first.a);
        const double len0 = std::min(R, 0.5 * len);
        const Complex w = first.a + len0 * (first.b - first.a) / len;
        PathSeg leg = PathSeg::line(first.a, w);
        leg.branch_terminal_start = true;
        first.a = w;
        path.segments.insert(path.segments.begin(), leg);
    }
    if (to.is_branch()) {
        PathSeg& last = path.segments.back();
        if (last.kind != PathSeg::Kind::Line)
            throw NumericError("plan_path: branch end must finish with a straight piece");
        const double len = std::abs(last.b - last.a);
        const double len0 = std::min(R, 0.5 * len);
        const Complex w = last.b - len0 * (last.b - last.a) / len;
        PathSeg leg = PathSeg::line(w, last.b);
        leg.branch_terminal_end = true;
        last.b = w;
        path.segments.push_back(leg);
    }

    path.clearance = measure_clearance(curve, path);
    return path;
}

XPath branch_circle(const HyperellipticCurve& curve, int branch_index, double radius,
                    double theta_start) {
    const Complex e = curve.branch_points.at(branch_index);
    XPath path;
    path.segments.push_back(PathSeg::arc(e, radius, theta_start, theta_start + 2.0 * kPi));
    path.clearance = measure_clearance(curve, path);
    return path;
}

// ---------------------------------------------------------------------------
// sheet tracking
//
// The continuous change of arg f along a straight x-step is computed exactly
// as the sum over roots of principal arguments: a segment subtends less than
// pi from any point off it, so each per-root term carries no 2 pi ambiguity.
// Arcs are cut into sweeps <= pi/2; every arc in this codebase is centered on
// a branch point, whose term is the sweep itself. The square-root branch then
// follows from arg y = arg y0 + (delta arg f)/2 with no step-size heuristics.

namespace {

double arg_increment_line(const HyperellipticCurve& curve, Complex x0, Complex x1) {
    double d = 0.0;
    for (const auto& e : curve.branch_points) {
        const Complex u = x0 - e, v = x1 - e;
        if (std::abs(u) == 0.0 || std::abs(v) == 0.0)
            throw BranchTooCloseError("continue_y: step touches a branch point");
        d += std::arg(v / u);
    }
    return d;
}

double arg_increment_arc(const HyperellipticCurve& curve, Complex center, Complex x0, Complex x1,
                         double dtheta) {
    double d = 0.0;
    for (const auto& e : curve.branch_points) {
        if (std::abs(center - e) < 1e-12 * curve.root_scale) {
            d += dtheta; // the hugged root: winding equals the sweep
            continue;
        }
        const Complex u = x0 - e, v = x1 - e;
        if (std::abs(u) == 0.0 || std::abs(v) == 0.0)
            throw BranchTooCloseError("continue_y: step touches a branch point");
        d += std::arg(v / u);
    }
    return d;
}

Complex branch_by_phase(Complex value_sq, Complex y_prev, double darg) {
    Complex candidate = std::sqrt(value_sq);
    const Complex pred = y_prev * std::polar(1.0, 0.5 * darg);
    if (candidate.real() * pred.real() + candidate.imag() * pred.imag() < 0.0)
        candidate = -candidate;
    return candidate;
}

// threads y = sqrt(f) along one path segment
class YTracker {
  public:
    YTracker(const HyperellipticCurve& curve, const PathSeg& seg, double t, Complex y)
        : curve_(curve), seg_(seg), t_(t), y_(y) {}

    // advance to t_target (any direction)
    Complex advance(double t_target) {
        if (seg_.kind == PathSeg::Kind::Line) {
            step_line(t_target);
            return y_;
        }
        // cut the arc into sweeps of at most pi/2
        const double total_sweep = (seg_.theta1 - seg_.theta0) * (t_target - t_);
        const int chunks = std::max(1, static_cast<int>(std::ceil(std::abs(total_sweep) / (kPi / 2.0))));
        for (int k = 1; k <= chunks; ++k)
            step_arc(t_ + (t_target - t_) / static_cast<double>(chunks - k + 1));
        return y_;
    }

    Complex y() const { return y_; }

  private:
    void step_line(double t_next) {
        const Complex x0 = seg_.eval(t_);
        const Complex x1 = seg_.eval(t_next);
        if (std::abs(x1 - x0) == 0.0) {
            t_ = t_next;
            return;
        }
        const double darg = arg_increment_line(curve_, x0, x1);
        const Complex f1 = curve_.f(x1);
        if (std::abs(f1) == 0.0) throw BranchTooCloseError("continue_y: f vanishes on the path");
        y_ = branch_by_phase(f1, y_, darg);
        t_ = t_next;
    }

    void step_arc(double t_next) {
        const Complex x0 = seg_.eval(t_);
        const Complex x1 = seg_.eval(t_next);
        const double dtheta = (seg_.theta1 - seg_.theta0) * (t_next - t_);
        const double darg = arg_increment_arc(curve_, seg_.center, x0, x1, dtheta);
        const Complex f1 = curve_.f(x1);
        if (std::abs(f1) == 0.0) throw BranchTooCloseError("continue_y: f vanishes on the path");
        y_ = branch_by_phase(f1, y_, darg);
        t_ = t_next;
    }

    const HyperellipticCurve& curve_;
    const PathSeg& seg_;
    double t_;
    Complex y_;
};

} // namespace

Complex continue_y_segment(const HyperellipticCurve& curve, Complex x0, Complex x1, Complex y0) {
    if (std::abs(x1 - x0) == 0.0) return y0;
    const double darg = arg_increment_line(curve, x0, x1);
    const Complex f1 = curve.f(x1);
    if (std::abs(f1) == 0.0) throw BranchTooCloseError("continue_y: f vanishes at the step end");
    return branch_by_phase(f1, y0, darg);
}

Complex continue_y(const HyperellipticCurve& curve, const XPath& path, Complex y_start) {
    if (path.empty()) return y_start;
    if (path.starts_at_branch() || path.ends_at_branch())
        throw InputError("continue_y: path endpoints must be ordinary");
    const Complex f0 = curve.f(path.start());
    if (std::abs(y_start * y_start - f0) > 1e-8 * std::max(1.0, std::abs(f0)))
        throw InconsistentStartError("continue_y: y_start^2 != f(start)");
    Complex y = y_start;
    for (const auto& seg : path.segments) {
        YTracker tracker(curve, seg, 0.0, y);
        y = tracker.advance(1.0);
    }
    return y;
}

// ---------------------------------------------------------------------------
// integration

namespace {

struct Accumulated {
    std::vector<Complex> values;
    double error = 0.0;
};

// Integrand samples for the g basis forms at a parameter point of a segment.
void add_basis_terms(std::vector<Complex>& sums, double weight, Complex x, Complex y, Complex dxdt,
                     int g) {
    Complex pw = 1.0;
    const Complex base = weight * dxdt / y;
    for (int k = 0; k < g; ++k) {
        sums[k] += base * pw;
        pw *= x;
    }
}

// Ordinary (non-terminal) segment: adaptive bisection, comparing the order-n
// rule on [a,b] against the two half-interval rules, with y threaded through
// all evaluation points in ascending order.
void integrate_ordinary(const HyperellipticCurve& curve, const PathSeg& seg, Complex& y_io,
                        const QuadOptions& opts, Accumulated& acc, double t0, double t1,
                        int depth) {
    const int g = curve.genus;
    const auto& rule = gauss_legendre(opts.order);
    const int n = opts.order;
    const double tm = 0.5 * (t0 + t1);

    // merged ascending evaluation schedule: whole-interval and half-interval nodes
    struct Node {
        double t;
        int rule_id; // 0 whole, 1 left, 2 right
        double weight;
    };
    std::vector<Node> nodes;
    nodes.reserve(3 * n);
    for (int i = 0; i < n; ++i) {
        nodes.push_back({t0 + 0.5 * (rule.nodes[i] + 1.0) * (t1 - t0), 0,
                         rule.weights[i] * 0.5 * (t1 - t0)});
        nodes.push_back({t0 + 0.5 * (rule.nodes[i] + 1.0) * (tm - t0), 1,
                         rule.weights[i] * 0.5 * (tm - t0)});
        nodes.push_back({tm + 0.5 * (rule.nodes[i] + 1.0) * (t1 - tm), 2,
                         rule.weights[i] * 0.5 * (t1 - tm)});
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });

    std::vector<Complex> whole(g, 0.0), halves(g, 0.0);
    YTracker tracker(curve, seg, t0, y_io);
    for (const auto& node : nodes) {
        const Complex y = tracker.advance(node.t);
        const Complex x = seg.eval(node.t);
        const Complex dxdt = seg.deriv(node.t);
        add_basis_terms(node.rule_id == 0 ? whole : halves, node.weight, x, y, dxdt, g);
    }
    const Complex y_end = tracker.advance(t1);

    double diff = 0.0;
    for (int k = 0; k < g; ++k) diff = std::max(diff, std::abs(whole[k] - halves[k]));

    if (diff <= opts.tol || depth >= opts.max_depth) {
        if (diff > 50.0 * opts.tol)
            throw QuadratureNotConvergedError("integrate: refinement limit reached");
        for (int k = 0; k < g; ++k) acc.values[k] += halves[k];
        acc.error += diff;
        y_io = y_end;
        return;
    }
    integrate_ordinary(curve, seg, y_io, opts, acc, t0, tm, depth + 1);
    integrate_ordinary(curve, seg, y_io, opts, acc, tm, t1, depth + 1);
}

// w-tracker for terminal legs: w(s)^2 = (a - e) g_e(x(s)), x(s) = e + (a-e) s^2,
// so the integrand 2 (a-e) x(s)^(k-1) / w(s) is smooth up to the branch point.
// The phase of W is tracked exactly through the cofactor roots (all branch
// points except e itself); x(s) moves along the straight chord [e, a].
class WTracker {
  public:
    WTracker(const HyperellipticCurve& curve, Complex a, Complex e, double s, Complex w)
        : curve_(curve), a_(a), e_(e), skip_(curve.nearest_branch(e)), s_(s), w_(w) {}

    Complex x(double s) const { return e_ + (a_ - e_) * s * s; }

    Complex advance(double s_target) {
        const Complex x0 = x(s_), x1 = x(s_target);
        double darg = 0.0;
        for (int j = 0; j < static_cast<int>(curve_.branch_points.size()); ++j) {
            if (j == skip_) continue;
            const Complex u = x0 - curve_.branch_points[j], v = x1 - curve_.branch_points[j];
            if (std::abs(u) == 0.0 || std::abs(v) == 0.0)
                throw BranchTooCloseError("integrate: terminal leg touches another branch point");
            darg += std::arg(v / u);
        }
        const Complex W1 = (a_ - e_) * curve_.f_cofactor(x1, e_);
        if (std::abs(W1) == 0.0)
            throw BranchTooCloseError("integrate: cofactor vanishes on the terminal leg");
        w_ = branch_by_phase(W1, w_, darg);
        s_ = s_target;
        return w_;
    }

    Complex w() const { return w_; }

  private:
    const HyperellipticCurve& curve_;
    Complex a_, e_;
    int skip_;
    double s_;
    Complex w_;
};

void integrate_terminal_sub(const HyperellipticCurve& curve, Complex a, Complex e, WTracker& tracker,
                            const QuadOptions& opts, Accumulated& acc, double s0, double s1,
                            int depth, bool ascending) {
    const int g = curve.genus;
    const auto& rule = gauss_legendre(opts.order);
    const int n = opts.order;
    const double sm = 0.5 * (s0 + s1);

    struct Node {
        double s;
        int rule_id;
        double weight;
    };
    std::vector<Node> nodes;
    nodes.reserve(3 * n);
    for (int i = 0; i < n; ++i) {
        nodes.push_back({s0 + 0.5 * (rule.nodes[i] + 1.0) * (s1 - s0), 0,
                         rule.weights[i] * 0.5 * (s1 - s0)});
        nodes.push_back({s0 + 0.5 * (rule.nodes[i] + 1.0) * (sm - s0), 1,
                         rule.weights[i] * 0.5 * (sm - s0)});
        nodes.push_back({sm + 0.5 * (rule.nodes[i] + 1.0) * (s1 - sm), 2,
                         rule.weights[i] * 0.5 * (s1 - sm)});
    }
    std::sort(nodes.begin(), nodes.end(), [ascending](const Node& x, const Node& y) {
        return ascending ? x.s < y.s : x.s > y.s;
    });

    std::vector<Complex> whole(g, 0.0), halves(g, 0.0);
    for (const auto& node : nodes) {
        const Complex w = tracker.advance(node.s);
        const Complex x = tracker.x(node.s);
        // integrand in s: 2 (a-e) x^(k-1) / w
        Complex pw = 1.0;
        const Complex base = node.weight * 2.0 * (a - e) / w;
        auto& sums = node.rule_id == 0 ? whole : halves;
        for (int k = 0; k < g; ++k) {
            sums[k] += base * pw;
            pw *= x;
        }
    }
    tracker.advance(ascending ? s1 : s0);

    double diff = 0.0;
    for (int k = 0; k < g; ++k) diff = std::max(diff, std::abs(whole[k] - halves[k]));
    if (diff <= opts.tol || depth >= opts.max_depth) {
        if (diff > 50.0 * opts.tol)
            throw QuadratureNotConvergedError("integrate: terminal refinement limit reached");
        for (int k = 0; k < g; ++k) acc.values[k] += halves[k];
        acc.error += diff;
        return;
    }
    if (ascending) {
        integrate_terminal_sub(curve, a, e, tracker, opts, acc, s0, sm, depth + 1, true);
        integrate_terminal_sub(curve, a, e, tracker, opts, acc, sm, s1, depth + 1, true);
    } else {
        integrate_terminal_sub(curve, a, e, tracker, opts, acc, sm, s1, depth + 1, false);
        integrate_terminal_sub(curve, a, e, tracker, opts, acc, s0, sm, depth + 1, false);
    }
}

// Terminal leg integration. Returns the basis integrals along the leg in its
// stated direction and threads y at the ordinary end (w at s=1 equals y(a)).
void integrate_terminal(const HyperellipticCurve& curve, const PathSeg& seg, Complex& y_io,
                        bool start_known, const QuadOptions& opts, Accumulated& acc) {
    const bool into_branch = seg.branch_terminal_end; // a -> e
    const Complex e = into_branch ? seg.b : seg.a;
    const Complex a = into_branch ? seg.a : seg.b;
    const int g = curve.genus;

    Accumulated local;
    local.values.assign(g, 0.0);

    if (into_branch) {
        // y at a is known; integrate s from 1 down to 0; leg value = -I(0->1)
        if (!start_known) throw InputError("integrate: terminal leg needs a tracked y");
        WTracker tracker(curve, a, e, 1.0, y_io);
        integrate_terminal_sub(curve, a, e, tracker, opts, local, 0.0, 1.0, 0, false);
        for (int k = 0; k < g; ++k) acc.values[k] -= local.values[k];
        y_io = 0.0; // lands on the branch point
    } else {
        // leg e -> a: principal branch of w at s = 0, integrate ascending
        const Complex W0 = (a - e) * curve.f_cofactor(e, e);
        WTracker tracker(curve, a, e, 0.0, std::sqrt(W0));
        integrate_terminal_sub(curve, a, e, tracker, opts, local, 0.0, 1.0, 0, true);
        for (int k = 0; k < g; ++k) acc.values[k] += local.values[k];
        y_io = tracker.advance(1.0); // y at the ordinary end
    }
    acc.error += local.error;
}

} // namespace

BasisIntegral integrate_basis(const HyperellipticCurve& curve, const XPath& path,
                              std::optional<Complex> y_start, const QuadOptions& opts) {
    const int g = curve.genus;
    BasisIntegral out;
    out.values.assign(g, 0.0);
    if (path.empty()) {
        out.y_end = y_start.value_or(Complex{});
        return out;
    }

    Accumulated acc;
    acc.values.assign(g, 0.0);

    Complex y{};
    bool have_y = false;
    if (!path.starts_at_branch()) {
        if (!y_start) throw InputError("integrate: ordinary start requires y_start");
        const Complex f0 = curve.f(path.start());
        if (std::abs((*y_start) * (*y_start) - f0) > 1e-8 * std::max(1.0, std::abs(f0)))
            throw InconsistentStartError("integrate: y_start^2 != f(start)");
        y = *y_start;
        have_y = true;
    }

    for (const auto& seg : path.segments) {
        if (seg.branch_terminal_start || seg.branch_terminal_end) {
            integrate_terminal(curve, seg, y, have_y, opts, acc);
            have_y = !seg.branch_terminal_end;
        } else {
            if (!have_y) throw InputError("integrate: no tracked y at an ordinary segment");
            integrate_ordinary(curve, seg, y, opts, acc, 0.0, 1.0, 0);
        }
    }

    out.values = std::move(acc.values);
    out.error = acc.error;
    out.y_end = y;
    return out;
}

Complex integrate(const HyperellipticCurve& curve, int k, const XPath& path,
                  std::optional<Complex> y_start, const QuadOptions& opts) {
    if (k < 1 || k > curve.genus) throw InputError("integrate: basis index out of range");
    return integrate_basis(curve, path, y_start, opts).values[k - 1];
}

// ---------------------------------------------------------------------------
// d log integrals (pure x-plane contour integrals)

namespace {

Complex dlog_integrand(const HyperellipticCurve& curve, const RationalFunctionSpec& h, Complex x) {
    Complex v = 0.0;
    for (const auto& factor : h.factors) {
        const double m = static_cast<double>(factor.exponent);
        if (factor.kind == RationalFactor::Kind::Linear)
            v += m / (x - factor.c);
        else
            v += m * 0.5 * curve.f_prime(x) / curve.f(x);
    }
    return v;
}

Complex integrate_dlog_seg(const HyperellipticCurve& curve, const RationalFunctionSpec& h,
                           const PathSeg& seg, const QuadOptions& opts, double t0, double t1,
                           int depth, double& err) {
    const auto& rule = gauss_legendre(opts.order);
    const double tm = 0.5 * (t0 + t1);
    auto sum_rule = [&](double lo, double hi) {
        Complex s = 0.0;
        for (int i = 0; i < opts.order; ++i) {
            const double t = lo + 0.5 * (rule.nodes[i] + 1.0) * (hi - lo);
            s += rule.weights[i] * 0.5 * (hi - lo) * dlog_integrand(curve, h, seg.eval(t)) *
                 seg.deriv(t);
        }
        return s;
    };
    const Complex whole = sum_rule(t0, t1);
    const Complex halves = sum_rule(t0, tm) + sum_rule(tm, t1);
    const double diff = std::abs(whole - halves);
    if (diff <= opts.tol || depth >= opts.max_depth) {
        if (diff > 50.0 * opts.tol)
            throw QuadratureNotConvergedError("integrate_dlog: refinement limit reached");
        err += diff;
        return halves;
    }
    return integrate_dlog_seg(curve, h, seg, opts, t0, tm, depth + 1, err) +
           integrate_dlog_seg(curve, h, seg, opts, tm, t1, depth + 1, err);
}

} // namespace

Complex integrate_dlog(const HyperellipticCurve& curve, const XPath& path,
                       const RationalFunctionSpec& h, const QuadOptions& opts) {
    // poles of d log h: finite zeros/poles of h and the branch points
    for (const auto& factor : h.factors) {
        if (factor.kind != RationalFactor::Kind::Linear) continue;
        for (const auto& seg : path.segments) {
            const double d = seg.kind == PathSeg::Kind::Line
                                 ? segment_distance(factor.c, seg.a, seg.b)
                                 : arc_distance(factor.c, seg.center, seg.radius, seg.theta0,
                                                seg.theta1);
            if (d < 1e-6 * curve.root_scale)
                throw PoleOnPathError("integrate_dlog: zero/pole of h on the contour");
        }
    }
    Complex total = 0.0;
    double err = 0.0;
    for (const auto& seg : path.segments)
        total += integrate_dlog_seg(curve, h, seg, opts, 0.0, 1.0, 0, err);
    return total;
}

// ---------------------------------------------------------------------------
// winding

int winding_number(const std::vector<Complex>& polyline, Complex around) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const Complex u = polyline[i] - around;
        const Complex v = polyline[i + 1] - around;
        total += std::arg(v / u);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

WindingReport enclosed_branch_parity(const HyperellipticCurve& curve, const XPath& closed_path) {
    if (closed_path.empty() || !closed_path.is_closed(1e-9 * curve.root_scale))
        throw PathNotClosedError("enclosed_branch_parity: path is not closed");
    const auto poly = flatten(closed_path);
    WindingReport report;
    report.per_branch.reserve(curve.branch_points.size());
    for (const auto& e : curve.branch_points) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < poly.size(); ++i)
            total += std::arg((poly[i + 1] - e) / (poly[i] - e));
        const double turns = total / (2.0 * kPi);
        const int w = static_cast<int>(std::lround(turns));
        if (std::abs(turns - w) > 1e-6)
            throw NumericError("enclosed_branch_parity: winding did not round to an integer");
        report.per_branch.push_back(w);
        report.total += w;
    }
    report.odd_parity = (report.total % 2 + 2) % 2 == 1;
    return report;
}

} // namespace abeljac
