#include "detfield/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "detfield/errors.hpp"
#include "detfield/linalg.hpp"

namespace detfield {
namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(std::size_t n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
}

// Laguerre L_n(x), L_{n-1}(x) sharing a common scale factor exp(log_scale).
struct ScaledLaguerre {
  double pn;
  double pnm1;
  double log_scale;
};

ScaledLaguerre laguerre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = 1.0 - x;
  double log_scale = 0.0;
  if (n == 0) return {1.0, 0.0, 0.0};
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double pk = ((2.0 * kd + 1.0 - x) * p1 - kd * p0) / (kd + 1.0);
    p0 = p1;
    p1 = pk;
    const double mag = std::abs(p1);
    if (mag > 1e100) {
      p0 /= mag;
      p1 /= mag;
      log_scale += std::log(mag);
    }
  }
  return {p1, p0, log_scale};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (!(b > a)) throw InvalidArgument("gauss_legendre: need a < b");
  QuadratureRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadratureRule gauss_laguerre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_laguerre: need at least one node");
  // Golub-Welsch for starting values.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    jacobi(static_cast<Index>(k), static_cast<Index>(k)) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      jacobi(static_cast<Index>(k), static_cast<Index>(k + 1)) = k + 1.0;
      jacobi(static_cast<Index>(k + 1), static_cast<Index>(k)) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = es.eigenvalues()(static_cast<Index>(i));
    for (int it = 0; it < 20; ++it) {
      const auto l = laguerre(n, x);
      // L_n'(x) = n (L_n - L_{n-1}) / x; the common scale cancels.
      const double dx = x * l.pn / (nd * (l.pn - l.pnm1));
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, x)) break;
    }
    // w_i = 1 / (x_i L_n'(x_i)^2); fold in e^{x_i} in log space.
    const auto l = laguerre(n, x);
    const double log_dp = std::log(nd * std::abs(l.pn - l.pnm1) / x) + l.log_scale;
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(x - std::log(x) - 2.0 * log_dp);
  }
  return rule;
}

QuadratureRule semi_infinite_rule(std::size_t n, double a, double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("semi_infinite_rule: scale must be positive");
  QuadratureRule base = gauss_legendre(n, 0.0, 1.0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = base.nodes[i];
    const double one_minus = 1.0 - u;
    rule.nodes[i] = a + scale * u / one_minus;
    rule.weights[i] = base.weights[i] * scale / (one_minus * one_minus);
  }
  return rule;
}

}  // namespace detfield
