#include "abeljac/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abeljac/errors.hpp"
#include "abeljac/polyroots.hpp"

namespace abeljac {

Complex HyperellipticCurve::f(Complex x) const {
    Complex v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

Complex HyperellipticCurve::f_prime(Complex x) const {
    Complex v = 0.0;
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k)
        v = v * x + coeffs[k] * static_cast<double>(k);
    return v;
}

Complex HyperellipticCurve::f_cofactor(Complex x, Complex e) const {
    // synthetic division: f(x) = (x - e) q(x) + f(e); evaluates q(x)
    const int n = degree;
    Complex q = coeffs[n]; // running coefficient of the quotient
    Complex val = q;
    for (int k = n - 1; k >= 1; --k) {
        q = coeffs[k] + q * e;
        val = val * x + q;
    }
    return val;
}

Complex HyperellipticCurve::y_reference(Complex x) const { return std::sqrt(f(x)); }

double HyperellipticCurve::distance_to_branch(Complex x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& e : branch_points) d = std::min(d, std::abs(x - e));
    return d;
}

int HyperellipticCurve::nearest_branch(Complex x) const {
    int best = 0;
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(branch_points.size()); ++i) {
        const double di = std::abs(x - branch_points[i]);
        if (di < d) {
            d = di;
            best = i;
        }
    }
    return best;
}

HyperellipticCurve new_curve(const std::vector<Complex>& coeffs, double degeneracy_threshold) {
    if (coeffs.empty()) throw InputError("new_curve: empty coefficient list");
    if (std::abs(coeffs.back()) == 0.0)
        throw LeadingZeroError("new_curve: zero leading coefficient");
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n % 2 == 0) throw EvenDegreeError("new_curve: degree must be odd (one point at infinity)");
    if (n < 3) throw DegreeTooSmallError("new_curve: degree must be >= 3 (genus >= 1)");

    HyperellipticCurve curve;
    curve.coeffs = coeffs;
    curve.degree = n;
    curve.genus = (n - 1) / 2;
    curve.branch_points = polynomial_roots(coeffs);

    double scale = 1.0;
    for (const auto& e : curve.branch_points) scale = std::max(scale, std::abs(e));
    curve.root_scale = scale;

    double margin = std::numeric_limits<double>::infinity();
    std::size_t ci = 0, cj = 1;
    for (std::size_t i = 0; i < curve.branch_points.size(); ++i)
        for (std::size_t j = i + 1; j < curve.branch_points.size(); ++j) {
            const double d = std::abs(curve.branch_points[i] - curve.branch_points[j]);
            if (d < margin) {
                margin = d;
                ci = i;
                cj = j;
            }
        }

    // computed roots of a near-double pair carry O(sqrt(eps)) noise, which can
    // inflate the measured separation past the threshold; re-measure the pair
    // through the critical point between the roots, where the quadratic model
    // separation 2 sqrt(|2 f(c) / f''(c)|) is accurate to full precision
    if (margin < 1e-5 * scale) {
        const auto f_second = [&curve](Complex x) {
            Complex v = 0.0;
            for (std::size_t k = curve.coeffs.size() - 1; k >= 2; --k)
                v = v * x + curve.coeffs[k] * static_cast<double>(k * (k - 1));
            return v;
        };
        Complex c = 0.5 * (curve.branch_points[ci] + curve.branch_points[cj]);
        bool converged = false;
        for (int iter = 0; iter < 60; ++iter) {
            const Complex d1 = curve.f_prime(c), d2 = f_second(c);
            if (std::abs(d2) < 1e-300) break;
            const Complex step = d1 / d2;
            c -= step;
            if (std::abs(step) < 1e-16 * scale) {
                converged = true;
                break;
            }
        }
        const Complex d2 = f_second(c);
        if (!converged || std::abs(d2) < 1e-12 * scale) {
            margin = 0.0; // higher-multiplicity cluster
        } else {
            margin = std::min(margin, 2.0 * std::sqrt(std::abs(2.0 * curve.f(c) / d2)));
        }
    }
    curve.discriminant_margin = margin;

    if (!(margin > degeneracy_threshold * scale))
        throw NearDegenerateError("new_curve: branch points closer than the degeneracy threshold");
    return curve;
}

int genus(const HyperellipticCurve& curve) { return curve.genus; }

namespace {

// finite points this close to a branch point (relative to root scale) are
// rejected: the sheet tag is meaningless there
constexpr double kBranchSnap = 1e-9;

} // namespace

CurvePoint finite_point(const HyperellipticCurve& curve, Complex x, int sheet) {
    if (sheet != 1 && sheet != -1) throw InputError("finite_point: sheet must be +1 or -1");
    if (curve.distance_to_branch(x) < kBranchSnap * curve.root_scale)
        throw NotOnCurveError("finite_point: x coincides with a branch point; use branch_point_at");
    CurvePoint p;
    p.kind = PointKind::Finite;
    p.x = x;
    p.sheet = sheet;
    return p;
}

CurvePoint branch_point_at(const HyperellipticCurve& curve, Complex x) {
    const int idx = curve.nearest_branch(x);
    if (std::abs(x - curve.branch_points[idx]) > 1e-6 * curve.root_scale)
        throw NotOnCurveError("branch_point_at: x is not a branch point");
    return branch_point_index(curve, idx);
}

CurvePoint branch_point_index(const HyperellipticCurve& curve, int index) {
    if (index < 0 || index >= static_cast<int>(curve.branch_points.size()))
        throw InputError("branch_point_index: index out of range");
    CurvePoint p;
    p.kind = PointKind::Branch;
    p.x = curve.branch_points[index];
    p.sheet = 0;
    return p;
}

CurvePoint infinity_point() {
    CurvePoint p;
    p.kind = PointKind::Infinity;
    p.sheet = 0;
    return p;
}

Complex y_of(const HyperellipticCurve& curve, const CurvePoint& p) {
    switch (p.kind) {
        case PointKind::Branch: return 0.0;
        case PointKind::Finite: return static_cast<double>(p.sheet) * curve.y_reference(p.x);
        default: throw InputError("y_of: infinity has no finite y");
    }
}

CurvePoint involution(const CurvePoint& p) {
    CurvePoint q = p;
    if (p.kind == PointKind::Finite) q.sheet = -p.sheet;
    return q;
}

bool same_point(const CurvePoint& a, const CurvePoint& b, double tol) {
    if (a.kind != b.kind) return false;
    if (a.kind == PointKind::Infinity) return true;
    if (std::abs(a.x - b.x) > tol) return false;
    return a.kind == PointKind::Branch || a.sheet == b.sheet;
}

DifferentialBasis holomorphic_basis(const HyperellipticCurve& curve) {
    return DifferentialBasis{curve.genus};
}

Complex evaluate_differential(const HyperellipticCurve& curve, int k, const CurvePoint& p) {
    if (k < 1 || k > curve.genus) throw InputError("evaluate_differential: basis index out of range");
    switch (p.kind) {
        case PointKind::Finite: {
            if (curve.distance_to_branch(p.x) < kBranchSnap * curve.root_scale)
                throw NotOnCurveError("evaluate_differential: point sits on a branch point");
            const Complex y = y_of(curve, p);
            return std::pow(p.x, k - 1) / y;
        }
        case PointKind::Branch: {
            const int idx = curve.nearest_branch(p.x);
            const Complex e = curve.branch_points[idx];
            if (std::abs(p.x - e) > 1e-6 * curve.root_scale)
                throw NotOnCurveError("evaluate_differential: branch point not on curve");
            const Complex ge = curve.f_cofactor(e, e); // f(x)/(x-e) at x = e
            return 2.0 * std::pow(e, k - 1) / std::sqrt(ge);
        }
        case PointKind::Infinity: {
            // chart x = t^-2: omega_k = -2 t^(2(g-k)) / sqrt(c_n) (1 + O(t^2)) dt
            if (k == curve.genus) return -2.0 / std::sqrt(curve.coeffs.back());
            return 0.0;
        }
    }
    throw InputError("evaluate_differential: bad point");
}

RationalFunctionSpec RationalFunctionSpec::linear(Complex c, int exponent) {
    if (exponent == 0) throw InputError("RationalFunctionSpec: zero exponent");
    RationalFunctionSpec s;
    s.factors.push_back({RationalFactor::Kind::Linear, c, exponent});
    return s;
}

RationalFunctionSpec RationalFunctionSpec::ycoord(int exponent) {
    if (exponent == 0) throw InputError("RationalFunctionSpec: zero exponent");
    RationalFunctionSpec s;
    s.factors.push_back({RationalFactor::Kind::YCoord, Complex{}, exponent});
    return s;
}

RationalFunctionSpec& RationalFunctionSpec::times(const RationalFunctionSpec& other) {
    factors.insert(factors.end(), other.factors.begin(), other.factors.end());
    return *this;
}

namespace {

// deterministic ordering for divisor entry merging
int point_rank(const CurvePoint& p) {
    switch (p.kind) {
        case PointKind::Finite: return 0;
        case PointKind::Branch: return 1;
        default: return 2;
    }
}

bool point_less(const CurvePoint& a, const CurvePoint& b) {
    if (point_rank(a) != point_rank(b)) return point_rank(a) < point_rank(b);
    if (a.kind == PointKind::Infinity) return false;
    if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
    if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
    return a.sheet < b.sheet;
}

} // namespace

int Divisor::degree() const {
    int d = 0;
    for (const auto& e : entries) d += e.multiplicity;
    return d;
}

int Divisor::multiplicity_at_infinity() const {
    for (const auto& e : entries)
        if (e.point.is_infinity()) return e.multiplicity;
    return 0;
}

Divisor& Divisor::add(const CurvePoint& p, int multiplicity) {
    if (multiplicity == 0) return *this;
    for (auto& e : entries) {
        if (same_point(e.point, p, 1e-12)) {
            e.multiplicity += multiplicity;
            if (e.multiplicity == 0) {
                entries.erase(entries.begin() + (&e - entries.data()));
            }
            return *this;
        }
    }
    entries.push_back({p, multiplicity});
    std::sort(entries.begin(), entries.end(),
              [](const DivisorEntry& a, const DivisorEntry& b) { return point_less(a.point, b.point); });
    return *this;
}

Divisor& Divisor::add(const Divisor& other) {
    for (const auto& e : other.entries) add(e.point, e.multiplicity);
    return *this;
}

Divisor divisor_of_function(const HyperellipticCurve& curve, const RationalFunctionSpec& h) {
    if (h.factors.empty()) return {};
    Divisor d;
    for (const auto& factor : h.factors) {
        const int m = factor.exponent;
        if (factor.kind == RationalFactor::Kind::YCoord) {
            for (std::size_t i = 0; i < curve.branch_points.size(); ++i)
                d.add(branch_point_index(curve, static_cast<int>(i)), m);
            d.add(infinity_point(), -curve.degree * m);
        } else {
            const Complex c = factor.c;
            if (curve.distance_to_branch(c) < 1e-9 * curve.root_scale) {
                d.add(branch_point_at(curve, c), 2 * m);
            } else {
                d.add(finite_point(curve, c, +1), m);
                d.add(finite_point(curve, c, -1), m);
            }
            d.add(infinity_point(), -2 * m);
        }
    }
    return d;
}

} // namespace abeljac
