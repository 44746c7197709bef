#ifndef ABELJAC_QUADRATURE_HPP
#define ABELJAC_QUADRATURE_HPP

#include <vector>

namespace abeljac {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on (-1, 1), ascending
    std::vector<double> weights;
};

// Nodes and weights of the n-point Gauss-Legendre rule, computed by Newton
// iteration on the Legendre recurrence and cached per order.
const GaussLegendreRule& gauss_legendre(int order);

} // namespace abeljac

#endif
