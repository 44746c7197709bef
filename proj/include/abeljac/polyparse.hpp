#ifndef ABELJAC_POLYPARSE_HPP
#define ABELJAC_POLYPARSE_HPP

#include <string>
#include <vector>

#include "abeljac/curve.hpp"

namespace abeljac {

// Inline polynomial parser: sums of terms like "x^3", "-2x", "0.5", "3i",
// "(1+2i)x^2" is not supported -- coefficients are real or pure imaginary
// literals ("2", "1.5i", "i"). Whitespace-insensitive. Throws InputError with
// the offending position on malformed input.
std::vector<Complex> parse_polynomial(const std::string& text);

} // namespace abeljac

#endif
