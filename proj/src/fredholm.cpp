#include "detfield/fredholm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detfield/errors.hpp"
#include "detfield/gramian.hpp"

namespace detfield {

DiscretizedKernel discretize_kernel(const QuadratureRule& rule,
                                    const std::function<Complex(double, double)>& kernel) {
  const Index n = static_cast<Index>(rule.size());
  if (n < 1) throw InvalidArgument("discretize_kernel: empty rule");
  DiscretizedKernel dk;
  dk.nodes = rule.nodes;
  dk.weights = rule.weights;
  std::vector<double> sw(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!(rule.weights[i] > 0.0)) throw InvalidArgument("discretize_kernel: nonpositive weight");
    sw[i] = std::sqrt(rule.weights[i]);
  }
  dk.M.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      dk.M(i, j) = sw[static_cast<std::size_t>(i)] *
                   kernel(rule.nodes[static_cast<std::size_t>(i)],
                          rule.nodes[static_cast<std::size_t>(j)]) *
                   sw[static_cast<std::size_t>(j)];
    }
  }
  return dk;
}

double default_truncation(const StateSpaceSystem& sys) {
  return std::max(20.0 / sys.min_decay_rate(), 10.0);
}

DiscretizedKernel nystrom_hankel(const StateSpaceSystem& sys, double x, std::size_t n,
                                 double length, NystromScheme scheme) {
  if (n < 8) throw InvalidArgument("nystrom_hankel: need at least 8 nodes");
  if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("nystrom_hankel: x must be >= 0");
  auto kernel = [&](double s, double t) { return sys.impulse(2.0 * x + s + t); };
  if (scheme == NystromScheme::laguerre) {
    return discretize_kernel(gauss_laguerre(n), kernel);
  }
  if (length <= 0.0) length = default_truncation(sys);
  DiscretizedKernel dk = discretize_kernel(gauss_legendre(n, 0.0, length), kernel);
  dk.truncation_bound = std::exp(-2.0 * sys.min_decay_rate() * length);
  dk.truncation_ok = dk.truncation_bound < 1e-14;
  return dk;
}

DiscretizedKernel nystrom_gramian_kernel(const StateSpaceSystem& sys, double x, std::size_t n,
                                         double length) {
  if (n < 8) throw InvalidArgument("nystrom_gramian_kernel: need at least 8 nodes");
  if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("nystrom_gramian_kernel: x must be >= 0");
  if (length <= 0.0) length = default_truncation(sys);
  const QuadratureRule rule = gauss_legendre(n, x, x + length);
  // Row vectors C exp(-tA) at the nodes, then the Gram matrix of the rows.
  Matrix rows(static_cast<Index>(n), sys.dim());
  for (std::size_t i = 0; i < n; ++i) {
    rows.row(static_cast<Index>(i)) = sys.c() * sys.propagator(rule.nodes[i]);
  }
  DiscretizedKernel dk;
  dk.nodes = rule.nodes;
  dk.weights = rule.weights;
  Eigen::VectorXd sw(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) sw(static_cast<Index>(i)) = std::sqrt(rule.weights[i]);
  const Matrix scaled = sw.cast<Complex>().asDiagonal() * rows;
  dk.M = scaled * scaled.adjoint();
  dk.truncation_bound = std::exp(-2.0 * sys.min_decay_rate() * length);
  dk.truncation_ok = dk.truncation_bound < 1e-14;
  return dk;
}

Complex det_shifted(const Matrix& m, Complex z) {
  if (m.rows() != m.cols()) throw InvalidArgument("det_shifted: matrix must be square");
  if (!all_finite(m)) throw InvalidArgument("det_shifted: non-finite entries");
  if (m.size() == 0) return 1.0;
  Matrix a = (z - 1.0) * m;
  a.diagonal().array() += 1.0;
  return a.partialPivLu().determinant();
}

Complex det_shifted_eigen(const Matrix& m, Complex z) {
  if (m.rows() != m.cols()) throw InvalidArgument("det_shifted_eigen: matrix must be square");
  if (m.size() == 0) return 1.0;
  const RealVector mu = hermitian_eigenvalues(m);
  Complex acc = 1.0;
  for (Index j = 0; j < mu.size(); ++j) acc *= 1.0 + (z - 1.0) * mu(j);
  return acc;
}

Complex log_det_shifted(const Matrix& m, Complex z) {
  if (m.rows() != m.cols()) throw InvalidArgument("log_det_shifted: matrix must be square");
  if (m.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("log_det_shifted: eigensolver failed");
  Complex acc = 0.0;
  for (Index j = 0; j < es.eigenvalues().size(); ++j) {
    const Complex f = 1.0 + (z - 1.0) * es.eigenvalues()(j);
    if (f.real() <= 0.0 && std::abs(f.imag()) <= 1e-14 * std::max(1.0, std::abs(f))) {
      throw InvalidArgument("log_det_shifted: factor on the negative real axis");
    }
    acc += std::log(f);
  }
  return acc;
}

double det_gap(const StateSpaceSystem& sys, double x) {
  const Matrix q = obs_gramian(sys, x);
  const RealVector mu = hermitian_eigenvalues(q);
  const double norm = mu.size() ? mu.maxCoeff() : 0.0;
  if (norm >= 1.0) {
    throw HypothesisViolation("det_gap: ||Q_x|| = " + std::to_string(norm) + " >= 1");
  }
  double acc = 1.0;
  for (Index j = 0; j < mu.size(); ++j) acc *= 1.0 - mu(j);
  return acc;
}

Complex det_gramian(const StateSpaceSystem& sys, double x, Complex lambda) {
  return det_shifted(obs_gramian(sys, x), 1.0 - lambda);
}

Complex det_hankel_via_R(const StateSpaceSystem& sys, double x, Complex lambda) {
  return det_shifted(hankel_product_R(sys, x), 1.0 - lambda);
}

Complex det_square(const StateSpaceSystem& sys, double x, Complex lambda) {
  const Matrix r = hankel_product_R(sys, x);
  return det_shifted(r, 1.0 - lambda) * det_shifted(r, 1.0 + lambda);
}

Complex det_zs(const StateSpaceSystem& sys, double x, Complex z) {
  const Matrix lq = ctrl_gramian(sys, x) * obs_gramian(sys, x);
  return det_shifted(lq, z);
}

std::pair<Complex, Complex> conjugation_invariance_check(const StateSpaceSystem& sys,
                                                         const Matrix& u, Complex lambda) {
  const Index n = sys.dim();
  if (u.rows() != n || u.cols() != n) {
    throw InvalidArgument("conjugation_invariance_check: U must be n x n");
  }
  if ((u.adjoint() * u - Matrix::Identity(n, n)).norm() > 1e-12) {
    throw InvalidArgument("conjugation_invariance_check: U is not unitary");
  }
  const Matrix q = obs_gramian(sys, 0.0);
  return {det_shifted(q, 1.0 + lambda), det_shifted(u * q * u.adjoint(), 1.0 + lambda)};
}

}  // namespace detfield
