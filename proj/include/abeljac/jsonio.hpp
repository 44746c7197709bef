#ifndef ABELJAC_JSONIO_HPP
#define ABELJAC_JSONIO_HPP

#include <json.hpp>

#include "abeljac/abel.hpp"
#include "abeljac/verify.hpp"

namespace abeljac {

using nlohmann::json;

// Complex numbers serialize as [re, im]; matrices row-major.
json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json cvector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd cvector_from_json(const json& j);
json cmatrix_to_json(const Eigen::MatrixXcd& m);

// {"coeffs": [[re, im], ...]} ascending powers
json curve_to_json(const HyperellipticCurve& curve);
std::vector<Complex> coeffs_from_json(const json& j);

// {"x": [re, im], "sheet": 1|-1} | {"kind": "infinity"} | {"kind": "branch", "x": [re, im]}
json point_to_json(const CurvePoint& p);
CurvePoint point_from_json(const HyperellipticCurve& curve, const json& j);

// {"entries": [{"point": ..., "mult": n}, ...]}
json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const HyperellipticCurve& curve, const json& j);

// {"value": [[re, im], ...], "reduced": [[re, im], ...]}
json jacobian_point_to_json(const JacobianPoint& p);

// {"segments": [...]} debugging form
json path_to_json(const XPath& path);

// {"generators": [[[re, im], ...], ...]}
json lattice_to_json(const PeriodLattice& lattice);

// loop words + transform matrix, for caching between CLI invocations
json basis_to_json(const SymplecticBasis& basis);

json riemann_report_to_json(const RiemannReport& r);
json verify_report_to_json(const VerifyReport& r);

// {"A": ..., "B": ..., "Omega": ..., "report": {...}}
json periods_output_json(const Pipeline& pipe, const RiemannReport& report);

} // namespace abeljac

#endif
