#include "abeljac/jsonio.hpp"

#include "abeljac/errors.hpp"

namespace abeljac {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cvector_to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Eigen::VectorXcd cvector_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of [re, im] pairs");
    Eigen::VectorXcd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json cmatrix_to_json(const Eigen::MatrixXcd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json curve_to_json(const HyperellipticCurve& curve) {
    json coeffs = json::array();
    for (const auto& c : curve.coeffs) coeffs.push_back(complex_to_json(c));
    return json{{"coeffs", coeffs}};
}

std::vector<Complex> coeffs_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw InputError("curve JSON must be {\"coeffs\": [[re, im], ...]}");
    std::vector<Complex> coeffs;
    coeffs.reserve(j["coeffs"].size());
    for (const auto& c : j["coeffs"]) coeffs.push_back(complex_from_json(c));
    return coeffs;
}

json point_to_json(const CurvePoint& p) {
    switch (p.kind) {
        case PointKind::Infinity: return json{{"kind", "infinity"}};
        case PointKind::Branch: return json{{"kind", "branch"}, {"x", complex_to_json(p.x)}};
        default: return json{{"x", complex_to_json(p.x)}, {"sheet", p.sheet}};
    }
}

CurvePoint point_from_json(const HyperellipticCurve& curve, const json& j) {
    if (!j.is_object()) throw InputError("point JSON must be an object");
    if (j.contains("kind")) {
        const std::string kind = j["kind"].get<std::string>();
        if (kind == "infinity") return infinity_point();
        if (kind == "branch") {
            if (!j.contains("x")) throw InputError("branch point requires \"x\"");
            return branch_point_at(curve, complex_from_json(j["x"]));
        }
        throw InputError("unknown point kind: " + kind);
    }
    if (!j.contains("x") || !j.contains("sheet"))
        throw InputError("finite point requires \"x\" and \"sheet\"");
    const int sheet = j["sheet"].get<int>();
    return finite_point(curve, complex_from_json(j["x"]), sheet);
}

json divisor_to_json(const Divisor& d) {
    json entries = json::array();
    for (const auto& e : d.entries)
        entries.push_back(json{{"point", point_to_json(e.point)}, {"mult", e.multiplicity}});
    return json{{"entries", entries}};
}

Divisor divisor_from_json(const HyperellipticCurve& curve, const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw InputError("divisor JSON must be {\"entries\": [...]}");
    Divisor d;
    for (const auto& e : j["entries"]) {
        if (!e.is_object() || !e.contains("point") || !e.contains("mult"))
            throw InputError("divisor entry requires \"point\" and \"mult\"");
        d.add(point_from_json(curve, e["point"]), e["mult"].get<int>());
    }
    return d;
}

json jacobian_point_to_json(const JacobianPoint& p) {
    return json{{"value", cvector_to_json(p.value)}, {"reduced", cvector_to_json(p.reduced)}};
}

json path_to_json(const XPath& path) {
    json segments = json::array();
    for (const auto& seg : path.segments) {
        if (seg.kind == PathSeg::Kind::Line) {
            segments.push_back(json{{"type", "line"},
                                    {"from", complex_to_json(seg.a)},
                                    {"to", complex_to_json(seg.b)},
                                    {"terminal_start", seg.branch_terminal_start},
                                    {"terminal_end", seg.branch_terminal_end}});
        } else {
            segments.push_back(json{{"type", "arc"},
                                    {"center", complex_to_json(seg.center)},
                                    {"radius", seg.radius},
                                    {"theta0", seg.theta0},
                                    {"theta1", seg.theta1}});
        }
    }
    return json{{"segments", segments}, {"clearance", path.clearance}};
}

json lattice_to_json(const PeriodLattice& lattice) {
    json gens = json::array();
    for (int j = 0; j < 2 * lattice.g; ++j) gens.push_back(cvector_to_json(lattice.gens.col(j)));
    return json{{"generators", gens}};
}

json basis_to_json(const SymplecticBasis& basis) {
    json words = json::array();
    for (const auto& cycle : basis.raw)
        words.push_back(json{{"pair", cycle.pair_index}, {"orientation", 1}});
    json transform = json::array();
    for (Eigen::Index i = 0; i < basis.transform.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < basis.transform.cols(); ++j)
            row.push_back(basis.transform(i, j));
        transform.push_back(row);
    }
    return json{{"loop_words", words}, {"transform", transform}};
}

json riemann_report_to_json(const RiemannReport& r) {
    return json{{"a_condition", r.a_condition},
                {"symmetry_defect", r.symmetry_defect},
                {"min_eig_im", r.min_eig_im},
                {"rank_2g_margin", r.rank_2g_margin},
                {"spd_factorization_ok", r.spd_factorization_ok},
                {"pass", r.pass}};
}

json verify_report_to_json(const VerifyReport& r) {
    return json{{"riemann", riemann_report_to_json(r.riemann)},
                {"abel",
                 {{"count", r.abel_count},
                  {"max_distance", r.abel_max_distance},
                  {"pass", r.abel_pass}}},
                {"base_point",
                 {{"count", r.base_point_count},
                  {"max_distance", r.base_point_max_distance},
                  {"pass", r.base_point_pass}}},
                {"dlog",
                 {{"count", r.dlog_count},
                  {"max_defect", r.dlog_max_defect},
                  {"pass", r.dlog_pass}}},
                {"pass", r.pass}};
}

json periods_output_json(const Pipeline& pipe, const RiemannReport& report) {
    return json{{"A", cmatrix_to_json(pipe.periods.A)},
                {"B", cmatrix_to_json(pipe.periods.B)},
                {"Omega", cmatrix_to_json(pipe.riemann.Omega)},
                {"report", riemann_report_to_json(report)}};
}

} // namespace abeljac
