#include "detfield/gramian.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "detfield/errors.hpp"
#include "detfield/quadrature.hpp"

namespace detfield {
namespace {

enum class Which { obs, ctrl, product };

Matrix integrand(const StateSpaceSystem& sys, const Matrix& e, Which which) {
  switch (which) {
    case Which::obs: {
      const Matrix ce = sys.c() * e;
      return ce.adjoint() * ce;
    }
    case Which::ctrl: {
      const Matrix eb = e * sys.b();
      return eb * eb.adjoint();
    }
    case Which::product:
      return e * sys.b() * sys.c() * e;
  }
  return {};
}

// int_0^inf of the Gramian integrand by panels of Gauss-Legendre; used when
// the eigenbasis is untrustworthy.
Matrix integrate_from_zero(const StateSpaceSystem& sys, Which which) {
  const double rate = sys.min_decay_rate();
  const double width = 0.5 / rate;
  const int panels = static_cast<int>(std::ceil(42.0 / (2.0 * rate) / width));
  const QuadratureRule rule = gauss_legendre(24, 0.0, width);

  std::vector<Matrix> local;
  local.reserve(rule.size());
  for (double t : rule.nodes) local.push_back(matrix_exponential_pade(sys.a(), t));
  const Matrix step = matrix_exponential_pade(sys.a(), width);

  const Index n = sys.dim();
  Matrix acc = Matrix::Zero(n, n);
  Matrix base = Matrix::Identity(n, n);
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      acc += rule.weights[i] * integrand(sys, base * local[i], which);
    }
    base = base * step;
  }
  return acc;
}

Matrix gramian_impl(const StateSpaceSystem& sys, double x, Which which) {
  if (!std::isfinite(x)) throw InvalidArgument("gramian: non-finite x");
  const Index n = sys.dim();
  if (!sys.has_stable_eigenbasis()) {
    const Matrix g0 = integrate_from_zero(sys, which);
    const Matrix e = sys.propagator(x);
    switch (which) {
      case Which::obs: return e.adjoint() * g0 * e;
      case Which::ctrl: return e * g0 * e.adjoint();
      case Which::product: return e * g0 * e;
    }
  }

  const Vector& k = sys.eigenvalues();
  const Vector& b = sys.modal_input();
  const RowVector& cv = sys.modal_output();
  const Matrix& v = sys.eigenvectors();
  const Matrix& vinv = sys.eigenvectors_inverse();
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      Complex s;
      Complex coeff;
      switch (which) {
        case Which::obs:
          s = std::conj(k(i)) + k(j);
          coeff = std::conj(cv(i)) * cv(j);
          break;
        case Which::ctrl:
          s = k(i) + std::conj(k(j));
          coeff = b(i) * std::conj(b(j));
          break;
        case Which::product:
          s = k(i) + k(j);
          coeff = b(i) * cv(j);
          break;
      }
      m(i, j) = coeff * std::exp(-s * x) / s;
    }
  }
  switch (which) {
    case Which::obs: return hermitian_part(vinv.adjoint() * m * vinv);
    case Which::ctrl: return hermitian_part(v * m * v.adjoint());
    case Which::product: return v * m * vinv;
  }
  return {};
}

}  // namespace

Matrix obs_gramian(const StateSpaceSystem& sys, double x) {
  return gramian_impl(sys, x, Which::obs);
}

Matrix ctrl_gramian(const StateSpaceSystem& sys, double x) {
  return gramian_impl(sys, x, Which::ctrl);
}

Matrix hankel_product_R(const StateSpaceSystem& sys, double x) {
  return gramian_impl(sys, x, Which::product);
}

GramianBundle gramians(const StateSpaceSystem& sys, double x) {
  return {x, obs_gramian(sys, x), ctrl_gramian(sys, x), hankel_product_R(sys, x)};
}

GramianBundle gramians_by_sylvester(const StateSpaceSystem& sys, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("gramian: non-finite x");
  const Matrix e = matrix_exponential_pade(sys.a(), x);
  const Matrix& a = sys.a();
  GramianBundle g;
  g.x = x;
  g.Q = hermitian_part(solve_sylvester(a.adjoint(), a, integrand(sys, e, Which::obs)));
  g.L = hermitian_part(solve_sylvester(a, a.adjoint(), integrand(sys, e, Which::ctrl)));
  g.R = solve_sylvester(a, a, integrand(sys, e, Which::product));
  return g;
}

double lyapunov_residual(const StateSpaceSystem& sys, double x, const Matrix& q,
                         const Matrix& l) {
  const Matrix e = sys.propagator(x);
  const Matrix& a = sys.a();
  const double rq = (a.adjoint() * q + q * a - integrand(sys, e, Which::obs)).norm();
  const double rl = (a * l + l * a.adjoint() - integrand(sys, e, Which::ctrl)).norm();
  return std::max(rq, rl);
}

double lyapunov_residual(const StateSpaceSystem& sys, double x) {
  return lyapunov_residual(sys, x, obs_gramian(sys, x), ctrl_gramian(sys, x));
}

std::pair<double, double> trace_derivative_check(const StateSpaceSystem& sys, double x,
                                                 double h) {
  if (!(h > 0.0)) throw InvalidArgument("trace_derivative_check: h must be positive");
  if (!sys.is_self_adjoint(1e-12)) {
    throw HypothesisViolation(
        "trace_derivative_check: needs A = A^dagger and C = B^dagger");
  }
  const double plus = obs_gramian(sys, x + h).trace().real();
  const double minus = obs_gramian(sys, x - h).trace().real();
  return {(plus - minus) / (2.0 * h), -sys.impulse(2.0 * x).real()};
}

std::pair<double, double> plancherel_trace_check(const StateSpaceSystem& sys, std::size_t n,
                                                 double tol) {
  const double trace_q0 = obs_gramian(sys, 0.0).trace().real();
  double scale = 0.0;
  for (Index j = 0; j < sys.dim(); ++j) scale = std::max(scale, std::abs(sys.eigenvalues()(j)));

  auto integral = [&](std::size_t nodes) {
    const QuadratureRule rule =
        gauss_legendre(nodes, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    return rule.integrate([&](double theta) {
      const double y = scale * std::tan(theta);
      const double jac = scale / (std::cos(theta) * std::cos(theta));
      Matrix m = sys.a();
      m.diagonal().array() += Complex(0.0, y);
      // ||C (iy + A)^{-1}||^2 = ||(iy + A)^{-T} C^T||^2
      const Matrix row = m.transpose().partialPivLu().solve(sys.c().transpose());
      return row.squaredNorm() * jac;
    }) / (2.0 * std::numbers::pi);
  };
  const double coarse = integral(n);
  const double fine = integral(2 * n);
  if (std::abs(coarse - fine) > tol * std::max(1.0, std::abs(fine))) {
    throw NumericalFailure("plancherel_trace_check: frequency quadrature not converged");
  }
  return {trace_q0, fine};
}

}  // namespace detfield
