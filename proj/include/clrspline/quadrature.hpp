#pragma once

#include <functional>
#include <vector>

namespace clrspline {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule with n nodes, exact for polynomials of degree <= 2n-1.
/// Rules are computed once per n and cached.
const GaussRule& gauss_legendre(int n);

/// Integrate f over [lo, hi] with an n-node Gauss-Legendre rule.
double gauss_integrate(const std::function<double(double)>& f, double lo,
                       double hi, int n);

}  // namespace clrspline
