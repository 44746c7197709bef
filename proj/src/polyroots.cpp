#include "abeljac/polyroots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

std::complex<double> horner_deriv(const std::vector<std::complex<double>>& c,
                                  std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) v = v * x + c[k] * static_cast<double>(k);
    return v;
}

} // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs) {
    if (coeffs.size() < 2) throw InputError("polynomial_roots: degree must be >= 1");
    const int n = static_cast<int>(coeffs.size()) - 1;
    const std::complex<double> lead = coeffs.back();
    if (std::abs(lead) == 0.0) throw LeadingZeroError("polynomial_roots: zero leading coefficient");

    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));

    // companion matrix of the monic normalization
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("polynomial_roots: eigenvalue iteration failed");

    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(i);

    // Newton polish; branch points feed every downstream tolerance
    for (auto& r : roots) {
        for (int pass = 0; pass < 8; ++pass) {
            const auto fr = horner(coeffs, r);
            const double rmag = std::max(1.0, std::abs(r));
            if (std::abs(fr) < 1e-13 * cmax * std::pow(rmag, n)) break;
            const auto dfr = horner_deriv(coeffs, r);
            if (std::abs(dfr) == 0.0) break;
            r -= fr / dfr;
        }
    }

    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace abeljac
