#include "abeljac/polyparse.hpp"

#include <cctype>
#include <cmath>

#include "abeljac/errors.hpp"

namespace abeljac {

namespace {

struct Scanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        return text[pos++];
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }
};

double parse_number(Scanner& s) {
    s.skip_ws();
    const std::size_t start = s.pos;
    while (s.pos < s.text.size() &&
           (std::isdigit(static_cast<unsigned char>(s.text[s.pos])) || s.text[s.pos] == '.'))
        ++s.pos;
    if (s.pos == start) s.fail("expected a number");
    try {
        return std::stod(s.text.substr(start, s.pos - start));
    } catch (const std::exception&) {
        s.fail("malformed number");
    }
}

int parse_exponent(Scanner& s) {
    s.skip_ws();
    const std::size_t start = s.pos;
    while (s.pos < s.text.size() && std::isdigit(static_cast<unsigned char>(s.text[s.pos])))
        ++s.pos;
    if (s.pos == start) s.fail("expected an exponent");
    return std::stoi(s.text.substr(start, s.pos - start));
}

// term := [number]['i']['*']['x'['^' int]]  with at least one component
void parse_term(Scanner& s, double sign, std::vector<Complex>& coeffs) {
    Complex coeff(sign, 0.0);
    bool have_coeff = false;

    if (std::isdigit(static_cast<unsigned char>(s.peek())) || s.peek() == '.') {
        coeff *= parse_number(s);
        have_coeff = true;
    }
    if (s.peek() == 'i' || s.peek() == 'I') {
        s.take();
        coeff *= Complex(0.0, 1.0);
        have_coeff = true;
    }
    if (s.peek() == '*') s.take();

    int power = 0;
    if (s.peek() == 'x' || s.peek() == 'X') {
        s.take();
        power = 1;
        if (s.peek() == '^') {
            s.take();
            power = parse_exponent(s);
        }
    } else if (!have_coeff) {
        s.fail("expected a coefficient or 'x'");
    }

    if (power >= static_cast<int>(coeffs.size())) coeffs.resize(power + 1, Complex{});
    coeffs[power] += coeff;
}

} // namespace

std::vector<Complex> parse_polynomial(const std::string& text) {
    Scanner s{text};
    std::vector<Complex> coeffs;

    if (s.done()) s.fail("empty polynomial");
    double sign = 1.0;
    if (s.peek() == '+' || s.peek() == '-') sign = s.take() == '-' ? -1.0 : 1.0;
    parse_term(s, sign, coeffs);

    while (!s.done()) {
        const char op = s.take();
        if (op != '+' && op != '-') s.fail("expected '+' or '-'");
        parse_term(s, op == '-' ? -1.0 : 1.0, coeffs);
    }

    while (coeffs.size() > 1 && coeffs.back() == Complex{}) coeffs.pop_back();
    return coeffs;
}

} // namespace abeljac
