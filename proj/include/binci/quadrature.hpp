#pragma once

#include <functional>
#include <vector>

namespace binci {

// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int order);

// Integral of f over [a, b] with `rule`.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f, double a,
                 double b);

}  // namespace binci
