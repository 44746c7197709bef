#ifndef ABELJAC_CURVE_HPP
#define ABELJAC_CURVE_HPP

#include <complex>
#include <vector>

namespace abeljac {

using Complex = std::complex<double>;

// Hyperelliptic curve y^2 = f(x) with f squarefree of odd degree n = 2g+1.
// The model has a single point over x = infinity. Immutable after construction.
struct HyperellipticCurve {
    std::vector<Complex> coeffs;       // c_0..c_n, ascending powers, c_n != 0
    int degree = 0;                    // n
    int genus = 0;                     // (n-1)/2
    std::vector<Complex> branch_points; // the n roots of f, sorted by (Re, Im)
    double discriminant_margin = 0.0;  // min pairwise distance between branch points
    double root_scale = 1.0;           // max(1, max |root|), used for relative thresholds

    Complex f(Complex x) const;        // Horner evaluation
    Complex f_prime(Complex x) const;
    // f(x)/(x - e) for a branch point e, evaluated by synthetic division
    Complex f_cofactor(Complex x, Complex e) const;

    // Fixed pointwise sheet reference: the principal square root of f(x).
    // Sheet +1 means y = y_reference(x).
    Complex y_reference(Complex x) const;

    double distance_to_branch(Complex x) const;
    int nearest_branch(Complex x) const; // index into branch_points
};

HyperellipticCurve new_curve(const std::vector<Complex>& coeffs,
                             double degeneracy_threshold = 1e-8);

int genus(const HyperellipticCurve& curve);

enum class PointKind { Finite, Branch, Infinity };

// A point of the curve. Finite non-branch points carry x and a sheet tag
// (+1/-1 against the y_reference convention); branch points carry y = 0 and
// no sheet; infinity is the unique point over x = inf.
struct CurvePoint {
    PointKind kind = PointKind::Finite;
    Complex x{};
    int sheet = +1; // meaningful for Finite only

    bool is_branch() const { return kind == PointKind::Branch; }
    bool is_infinity() const { return kind == PointKind::Infinity; }
    bool is_finite() const { return kind != PointKind::Infinity; }
};

CurvePoint finite_point(const HyperellipticCurve& curve, Complex x, int sheet);
CurvePoint branch_point_at(const HyperellipticCurve& curve, Complex x);
CurvePoint branch_point_index(const HyperellipticCurve& curve, int index);
CurvePoint infinity_point();

// y coordinate of a point (0 at branch points; error at infinity)
Complex y_of(const HyperellipticCurve& curve, const CurvePoint& p);

// Hyperelliptic involution (x, y) -> (x, -y). Fixes branch points and infinity.
CurvePoint involution(const CurvePoint& p);

bool same_point(const CurvePoint& a, const CurvePoint& b, double tol = 1e-12);

// The basis omega_k = x^(k-1) dx / y, k = 1..g. Elements are index-only.
struct DifferentialBasis {
    int size = 0;
};

DifferentialBasis holomorphic_basis(const HyperellipticCurve& curve);

// Value of omega_k in the chart at P:
//   finite non-branch: chart x, value x^(k-1)/y;
//   branch point e:    chart t with x = e + t^2, value 2 e^(k-1)/sqrt(g_e(e))
//                      where f(x) = (x-e) g_e(x), principal square root;
//   infinity:          chart t with x = t^(-2), value -2/sqrt(c_n) for k = g,
//                      0 for k < g, principal square root.
Complex evaluate_differential(const HyperellipticCurve& curve, int k, const CurvePoint& p);

// Restricted family of rational functions: products of (x - c)^m and y^m.
struct RationalFactor {
    enum class Kind { Linear, YCoord };
    Kind kind = Kind::Linear;
    Complex c{};     // Linear only
    int exponent = 1; // nonzero
};

struct RationalFunctionSpec {
    std::vector<RationalFactor> factors;

    static RationalFunctionSpec linear(Complex c, int exponent = 1);
    static RationalFunctionSpec ycoord(int exponent = 1);
    RationalFunctionSpec& times(const RationalFunctionSpec& other);
};

struct DivisorEntry {
    CurvePoint point;
    int multiplicity = 0;
};

// Formal sum of curve points with integer multiplicities; entries are merged
// and zero multiplicities dropped.
struct Divisor {
    std::vector<DivisorEntry> entries;

    int degree() const;
    Divisor& add(const CurvePoint& p, int multiplicity);
    Divisor& add(const Divisor& other);
    int multiplicity_at_infinity() const;
};

// Zeros and poles of h with multiplicity, including at infinity:
//   div(x - c) = (c,+) + (c,-) - 2*inf   (c not a branch point)
//   div(x - e) = 2*(e,0) - 2*inf         (e a branch point)
//   div(y)     = sum_i (e_i, 0) - (2g+1)*inf
// Products add componentwise. The result always has degree 0.
Divisor divisor_of_function(const HyperellipticCurve& curve, const RationalFunctionSpec& h);

} // namespace abeljac

#endif
