#ifndef ABELJAC_POLYROOTS_HPP
#define ABELJAC_POLYROOTS_HPP

#include <complex>
#include <vector>

namespace abeljac {

// All complex roots of c_0 + c_1 x + ... + c_n x^n (c_n != 0), computed from
// the companion-matrix eigenvalues and polished by Newton iteration until
// |f(root)| < 1e-13 * max|c_k| * max(1, |root|)^n. Roots are returned sorted
// lexicographically by (Re, Im).
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

} // namespace abeljac

#endif
