#pragma once

#include <cstddef>
#include <vector>

namespace detfield {

/// Nodes (strictly increasing) and positive weights of an interpolatory rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// n-point Gauss-Legendre rule affinely mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// n-point Gauss-Laguerre rule on (0, inf) with the weight e^{-t} folded into
/// the weights, i.e. sum w_i f(t_i) approximates the plain integral of f.
QuadratureRule gauss_laguerre(std::size_t n);

/// Rule for (a, inf): t = a + scale * u / (1 - u) with Gauss-Legendre in u.
QuadratureRule semi_infinite_rule(std::size_t n, double a, double scale = 1.0);

}  // namespace detfield
