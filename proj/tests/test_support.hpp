#ifndef ABELJAC_TEST_SUPPORT_HPP
#define ABELJAC_TEST_SUPPORT_HPP

// shared oracles and generators for the test suites; everything here is
// independent of the library's integration/continuation machinery

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "abeljac/verify.hpp"

namespace testsup {

using abeljac::Complex;

inline constexpr double kPi = 3.14159265358979323846;

// composite Simpson rule, the independent quadrature used by oracles
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    Complex sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * (h / 3.0);
}

// SL2(Z) reduction of a modular parameter to the fundamental domain
inline Complex reduce_tau(Complex tau) {
    for (int i = 0; i < 200; ++i) {
        tau -= std::round(tau.real());
        if (std::norm(tau) < 1.0 - 1e-14)
            tau = -1.0 / tau;
        else
            break;
    }
    return tau;
}

// closed polygonal loop through random vertices, kept off the branch points
inline abeljac::XPath random_closed_polygon(const abeljac::HyperellipticCurve& curve,
                                            abeljac::Rng& rng) {
    const int k = rng.integer(3, 6);
    std::vector<Complex> vertices;
    while (static_cast<int>(vertices.size()) < k) {
        const Complex v = rng.in_disk(1.4 * curve.root_scale);
        if (curve.distance_to_branch(v) < 0.05 * curve.discriminant_margin) continue;
        vertices.push_back(v);
    }
    abeljac::XPath path;
    for (int i = 0; i < k; ++i)
        path.segments.push_back(abeljac::PathSeg::line(vertices[i], vertices[(i + 1) % k]));
    path.clearance = 1e9;
    for (const auto& seg : path.segments)
        for (int s = 0; s <= 20; ++s)
            path.clearance =
                std::min(path.clearance, curve.distance_to_branch(seg.eval(s / 20.0)));
    return path;
}

} // namespace testsup

#endif
