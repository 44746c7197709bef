#ifndef ABELJAC_PATH_HPP
#define ABELJAC_PATH_HPP

#include <optional>
#include <vector>

#include "abeljac/curve.hpp"
#include "abeljac/settings.hpp"

namespace abeljac {

// One piece of a contour in the x-plane: a straight segment or a circular arc.
// Arcs are parametrized by angle from theta0 to theta1 (signed sweep).
struct PathSeg {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;

    // Line
    Complex a{}, b{};

    // Arc
    Complex center{};
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;

    // terminal legs end exactly on a branch point and are integrated with the
    // x = e + t^2 substitution; they are always straight
    bool branch_terminal_end = false;
    bool branch_terminal_start = false;

    static PathSeg line(Complex from, Complex to);
    static PathSeg arc(Complex center, double radius, double theta0, double theta1);

    Complex eval(double t) const;  // t in [0, 1]
    Complex deriv(double t) const; // dx/dt
    Complex start() const { return eval(0.0); }
    Complex end() const { return eval(1.0); }
    double length() const;
    PathSeg reversed() const;
};

// A contour in the x-plane with measured clearance from the branch set.
// Consecutive segments share endpoints. Ends may touch a branch point, but
// only at the very end of a terminal leg.
struct XPath {
    std::vector<PathSeg> segments;
    double clearance = -1.0; // min distance of the non-terminal portion to any branch point

    bool empty() const { return segments.empty(); }
    Complex start() const;
    Complex end() const;
    bool starts_at_branch() const;
    bool ends_at_branch() const;
    double length() const;
    XPath reversed() const;
    bool is_closed(double tol = 1e-9) const;

    XPath& append(const XPath& other); // other must start where this ends
};

// Flattened polyline (arcs subdivided); used for winding numbers and
// crossing enumeration.
std::vector<Complex> flatten(const XPath& path, double max_arc_step = 0.19634954084936207 /* pi/16 */);

// Plan a contour between two finite points, keeping all interior (non-terminal)
// portions at distance >= clearance_fraction * discriminant_margin from every
// branch point. Detours hug clearance circles with tangent entry/exit, so the
// path is C^1 away from branch-terminal ends.
XPath plan_path(const HyperellipticCurve& curve, const CurvePoint& from, const CurvePoint& to,
                double clearance_fraction = 0.25);

// Circle of given radius around a branch point, traversed counterclockwise
// starting at angle theta_start; encloses exactly that branch point when the
// radius is below the local clearance.
XPath branch_circle(const HyperellipticCurve& curve, int branch_index, double radius,
                    double theta_start = 0.0);

// Analytic continuation of y = sqrt(f(x)) along a path with ordinary endpoints.
// Steps keep |delta arg f| < pi/2, which pins the square-root branch.
Complex continue_y(const HyperellipticCurve& curve, const XPath& path, Complex y_start);

// Continuation from x0 to x1 along the straight segment between them.
Complex continue_y_segment(const HyperellipticCurve& curve, Complex x0, Complex x1, Complex y0);

struct QuadOptions {
    int order = 32;
    int max_depth = 12;
    double tol = 1e-11;
};

struct BasisIntegral {
    std::vector<Complex> values; // size g: integral of x^(k-1)/y dx, k = 1..g
    double error = 0.0;          // accumulated subdivision-difference estimate
    Complex y_end{};             // continuation of y at the path end (ordinary ends)
};

// Integrals of all g basis differentials along the tracked lift of the path.
// y_start fixes the lift at an ordinary start; paths starting at a branch
// point pick the principal branch of the substituted integrand (callers flip
// the overall sign to select the other lift, since sigma* omega = -omega).
BasisIntegral integrate_basis(const HyperellipticCurve& curve, const XPath& path,
                              std::optional<Complex> y_start, const QuadOptions& opts = {});

// Single differential; thin wrapper over integrate_basis.
Complex integrate(const HyperellipticCurve& curve, int k, const XPath& path,
                  std::optional<Complex> y_start, const QuadOptions& opts = {});

// Contour integral of d log h along the path. d log h pulls back to a rational
// function of x alone, so no sheet tracking is needed; the path must stay
// clear of the finite zeros/poles of h and of the branch points.
Complex integrate_dlog(const HyperellipticCurve& curve, const XPath& path,
                       const RationalFunctionSpec& h, const QuadOptions& opts = {});

struct WindingReport {
    std::vector<int> per_branch; // winding number of the path around each branch point
    int total = 0;               // sum of winding numbers
    bool odd_parity = false;
};

// Winding-number count of branch points enclosed by a closed path, from
// accumulated argument along the flattened polyline.
WindingReport enclosed_branch_parity(const HyperellipticCurve& curve, const XPath& closed_path);

// Winding number of a closed polyline around an arbitrary point.
int winding_number(const std::vector<Complex>& polyline, Complex around);

} // namespace abeljac

#endif
