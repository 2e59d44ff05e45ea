#include "detfield/glsolver.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/LU>

#include "detfield/errors.hpp"
#include "detfield/fredholm.hpp"
#include "detfield/gramian.hpp"
#include "detfield/quadrature.hpp"

namespace detfield {
namespace {

constexpr double kSingularRcond = 1e-14;

void require_kind(const GLSolution& sol, GLKind kind, const char* what) {
  if (sol.kind() != kind) {
    throw InvalidArgument(std::string(what) +
                          (kind == GLKind::scalar ? ": needs a scalar solution"
                                                  : ": needs a zs solution"));
  }
}

Matrix inverse_checked(const Matrix& m, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > kSingularRcond)) {
    throw SingularMatrix(std::string(what) + ": matrix singular (coupling too large)");
  }
  return lu.inverse();
}

// (I + lambda R_x)^{-1}
Matrix scalar_resolvent(const GLSolution& sol, double x) {
  const Index n = sol.system().dim();
  Matrix m = sol.lambda() * hankel_product_R(sol.system(), x);
  m += Matrix::Identity(n, n);
  return inverse_checked(m, "gl_T");
}

// G_x^{-1} and Q_x
std::pair<Matrix, Matrix> zs_parts(const GLSolution& sol, double x) {
  const Index n = sol.system().dim();
  const Matrix q = obs_gramian(sol.system(), x);
  const Matrix l = ctrl_gramian(sol.system(), x);
  Matrix g = sol.lambda() * sol.lambda() * q * l;
  g += Matrix::Identity(n, n);
  return {inverse_checked(g, "zs"), q};
}

double length_for(const GLSolution& sol, const QuadratureSpec& spec) {
  return spec.length > 0.0 ? spec.length : default_truncation(sol.system());
}

// 5-point second difference.
template <class F>
auto second_difference(F&& f, double x, double h) -> std::decay_t<decltype(f(x))> {
  std::decay_t<decltype(f(x))> r =
      (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) /
      (12.0 * h * h);
  return r;
}

void require_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("step must be positive");
}

}  // namespace

GLSolution::GLSolution(StateSpaceSystem sys, Complex lambda, GLKind kind)
    : sys_(std::move(sys)), lambda_(lambda), kind_(kind) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw InvalidArgument("GLSolution: non-finite coupling");
  }
  if (kind == GLKind::zs && lambda.imag() != 0.0) {
    throw InvalidArgument("GLSolution: zs kind needs a real coupling");
  }
}

Complex gl_T(const GLSolution& sol, double x, double y) {
  return sol.lambda() * gl_T_normalized(sol, x, y);
}

Complex gl_T_normalized(const GLSolution& sol, double x, double y) {
  require_kind(sol, GLKind::scalar, "gl_T");
  const StateSpaceSystem& sys = sol.system();
  const Matrix m = scalar_resolvent(sol, x);
  return -(sys.c() * sys.propagator(x) * m * sys.propagator(y) * sys.b())(0, 0);
}

double gl_residual(const GLSolution& sol, double x, double y, const QuadratureSpec& spec,
                   double t_scale) {
  require_kind(sol, GLKind::scalar, "gl_residual");
  const StateSpaceSystem& sys = sol.system();
  const Matrix row = -t_scale * (sys.c() * sys.propagator(x) * scalar_resolvent(sol, x));
  const QuadratureRule rule = gauss_legendre(spec.nodes, x, x + length_for(sol, spec));
  const Complex integral = rule.integrate([&](double z) {
    return (row * sys.propagator(z) * sys.b())(0, 0) * sys.impulse(z + y);
  });
  const Complex t = (row * sys.propagator(y) * sys.b())(0, 0);
  return std::abs(t + sys.impulse(x + y) + sol.lambda() * integral);
}

Complex gl_T_diagonal_derivative(const GLSolution& sol, double x) {
  require_kind(sol, GLKind::scalar, "gl_T_diagonal_derivative");
  const StateSpaceSystem& sys = sol.system();
  const Complex lambda = sol.lambda();
  const Matrix e = sys.propagator(x);
  const Matrix m = scalar_resolvent(sol, x);
  const Matrix dm = m * (lambda * e * sys.b() * sys.c() * e) * m;
  const Matrix& a = sys.a();
  const Matrix inner = -a * e * m * e + e * dm * e - e * m * e * a;
  return -lambda * (sys.c() * inner * sys.b())(0, 0);
}

double potential_q(const GLSolution& sol, double x, double h) {
  require_step(h);
  const Complex d = (gl_T(sol, x + h, x + h) - gl_T(sol, x - h, x - h)) / (2.0 * h);
  return -2.0 * d.real();
}

double potential_q_analytic(const GLSolution& sol, double x) {
  return -2.0 * gl_T_diagonal_derivative(sol, x).real();
}

std::pair<Complex, Complex> logdet_diagonal_check(const GLSolution& sol, double x, double h) {
  require_kind(sol, GLKind::scalar, "logdet_diagonal_check");
  require_step(h);
  const Complex lambda = sol.lambda();
  const Complex plus = det_hankel_via_R(sol.system(), x + h, -lambda);
  const Complex minus = det_hankel_via_R(sol.system(), x - h, -lambda);
  return {gl_T(sol, x, x), std::log(plus / minus) / (2.0 * h)};
}

Complex wavefunction(const GLSolution& sol, double x, double k) {
  require_kind(sol, GLKind::scalar, "wavefunction");
  const StateSpaceSystem& sys = sol.system();
  const Matrix e = sys.propagator(x);
  Matrix shifted = sys.a();
  shifted.diagonal().array() -= Complex(0.0, k);
  const Matrix shifted_inv = shifted.partialPivLu().inverse();
  const Complex corr =
      (sys.c() * e * scalar_resolvent(sol, x) * shifted_inv * e * sys.b())(0, 0);
  return std::exp(Complex(0.0, k * x)) * (1.0 - sol.lambda() * corr);
}

Complex wavefunction_quadrature(const GLSolution& sol, double x, double k,
                                const QuadratureSpec& spec) {
  require_kind(sol, GLKind::scalar, "wavefunction_quadrature");
  const StateSpaceSystem& sys = sol.system();
  const Matrix row = -sol.lambda() * (sys.c() * sys.propagator(x) * scalar_resolvent(sol, x));
  const QuadratureRule rule = gauss_legendre(spec.nodes, x, x + length_for(sol, spec));
  const Complex integral = rule.integrate([&](double y) {
    return std::exp(Complex(0.0, k * y)) * (row * sys.propagator(y) * sys.b())(0, 0);
  });
  return std::exp(Complex(0.0, k * x)) + integral;
}

double schrodinger_residual(const GLSolution& sol, double x, double k, double h) {
  require_step(h);
  auto psi = [&](double s) { return wavefunction(sol, s, k); };
  const Complex d2 = second_difference(psi, x, h);
  const Complex p = psi(x);
  return std::abs(-d2 + potential_q_analytic(sol, x) * p - k * k * p);
}

double gl_pde_residual(const GLSolution& sol, double x, double y, double h) {
  require_step(h);
  const Complex txx = second_difference([&](double s) { return gl_T(sol, s, y); }, x, h);
  const Complex tyy = second_difference([&](double s) { return gl_T(sol, x, s); }, y, h);
  return std::abs(txx - tyy - potential_q_analytic(sol, x) * gl_T(sol, x, y));
}

Complex zs_V(const GLSolution& sol, double x, double y) {
  require_kind(sol, GLKind::zs, "zs_V");
  const StateSpaceSystem& sys = sol.system();
  const auto [ginv, q] = zs_parts(sol, x);
  const Matrix ex = sys.propagator(x);
  const Matrix ey = sys.propagator(y);
  return -sol.lambda() *
         (sys.b().adjoint() * ex.adjoint() * ginv * ey.adjoint() * sys.c().adjoint())(0, 0);
}

Complex zs_Ubar(const GLSolution& sol, double x, double y) {
  require_kind(sol, GLKind::zs, "zs_Ubar");
  const StateSpaceSystem& sys = sol.system();
  const auto [ginv, q] = zs_parts(sol, x);
  const Matrix ex = sys.propagator(x);
  const Matrix ey = sys.propagator(y);
  const Complex l2 = sol.lambda() * sol.lambda();
  return -l2 * (sys.b().adjoint() * ex.adjoint() * ginv * q * ey * sys.b())(0, 0);
}

Complex zs_U(const GLSolution& sol, double x, double y) {
  return std::conj(zs_Ubar(sol, x, y));
}

Matrix zs_T(const GLSolution& sol, double x, double y) {
  const Complex ubar = zs_Ubar(sol, x, y);
  const Complex v = zs_V(sol, x, y);
  Matrix t(2, 2);
  t << ubar, v, -std::conj(v), std::conj(ubar);
  return t;
}

Complex zs_det_G(const GLSolution& sol, double x) {
  require_kind(sol, GLKind::zs, "zs_det_G");
  const Complex l2 = sol.lambda() * sol.lambda();
  return det_zs(sol.system(), x, 1.0 + l2);
}

std::pair<Complex, Complex> zs_diag_logdet_check(const GLSolution& sol, double x, double h) {
  require_step(h);
  const Complex plus = zs_det_G(sol, x + h);
  const Complex minus = zs_det_G(sol, x - h);
  return {zs_U(sol, x, x), 0.5 * std::log(plus / minus) / (2.0 * h)};
}

double nls_potential_sq(const GLSolution& sol, double x, double h) {
  require_step(h);
  const double value = second_difference(
      [&](double s) { return std::log(std::abs(zs_det_G(sol, s))); }, x, h);
  if (value < -1e-8) {
    throw NumericalFailure("nls_potential_sq: negative |q|^2 = " + std::to_string(value));
  }
  return std::max(value, 0.0);
}

Complex zs_potential(const GLSolution& sol, double x) {
  return -2.0 * zs_V(sol, x, x);
}

Matrix zs_W(const GLSolution& sol, double x, double h) {
  require_step(h);
  return -2.0 * (zs_T(sol, x + h, x + h) - zs_T(sol, x - h, x - h)) / (2.0 * h);
}

double zs_reduced_residual(const GLSolution& sol, double x, double y, const QuadratureSpec& spec) {
  require_kind(sol, GLKind::zs, "zs_reduced_residual");
  const StateSpaceSystem& sys = sol.system();
  const QuadratureRule rule = gauss_legendre(spec.nodes, x, x + length_for(sol, spec));
  const std::size_t n = rule.size();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = zs_V(sol, x, rule.nodes[i]);
  Complex acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double z = rule.nodes[j];
    Complex inner = 0.0;
    for (std::size_t i = 0; i < n; ++i) inner += rule.weights[i] * v[i] * sys.impulse(rule.nodes[i] + z);
    acc += rule.weights[j] * inner * std::conj(sys.impulse(y + z));
  }
  const Complex lambda = sol.lambda();
  return std::abs(zs_V(sol, x, y) + lambda * std::conj(sys.impulse(x + y)) + lambda * lambda * acc);
}

Complex zs_Ubar_quadrature(const GLSolution& sol, double x, double y, const QuadratureSpec& spec) {
  require_kind(sol, GLKind::zs, "zs_Ubar_quadrature");
  const StateSpaceSystem& sys = sol.system();
  const QuadratureRule rule = gauss_legendre(spec.nodes, x, x + length_for(sol, spec));
  return sol.lambda() *
         rule.integrate([&](double z) { return zs_V(sol, x, z) * sys.impulse(z + y); });
}

double zs_pde_residual(const GLSolution& sol, double x, double y, double h) {
  require_step(h);
  const Matrix txx = second_difference([&](double s) -> Matrix { return zs_T(sol, s, y); }, x, h);
  const Matrix tyy = second_difference([&](double s) -> Matrix { return zs_T(sol, x, s); }, y, h);
  return (txx - tyy - zs_W(sol, x) * zs_T(sol, x, y)).norm();
}

}  // namespace detfield
