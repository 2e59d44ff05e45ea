#pragma once

#include <cstddef>
#include <utility>

#include "detfield/linalg.hpp"
#include "detfield/realization.hpp"

namespace detfield {

enum class GLKind { scalar, zs };

/// Closed-form solution of a Gelfand-Levitan equation for the system sys at
/// coupling lambda. The zs kind needs a real coupling.
class GLSolution {
 public:
  GLSolution(StateSpaceSystem sys, Complex lambda = 1.0, GLKind kind = GLKind::scalar);

  const StateSpaceSystem& system() const { return sys_; }
  Complex lambda() const { return lambda_; }
  GLKind kind() const { return kind_; }

 private:
  StateSpaceSystem sys_;
  Complex lambda_;
  GLKind kind_;
};

/// Quadrature on (x, x + length) for residual checks; length <= 0 selects
/// default_truncation of the system.
struct QuadratureSpec {
  std::size_t nodes = 200;
  double length = 0.0;
};

// Scalar equation: T + lambda phi + lambda int T phi = 0.

/// T(x, y) = -lambda C exp(-xA) (I + lambda R_x)^{-1} exp(-yA) B.
/// SingularMatrix when I + lambda R_x is not invertible.
Complex gl_T(const GLSolution& sol, double x, double y);

/// T(x, y) / lambda, the solution of T + phi + lambda int T phi = 0
/// (equal to -phi(x + y) at lambda = 0).
Complex gl_T_normalized(const GLSolution& sol, double x, double y);

/// |T~(x,y) + phi(x+y) + lambda int_x^inf T~(x,z) phi(z+y) dz| for the
/// normalized kernel T~ multiplied by t_scale.
double gl_residual(const GLSolution& sol, double x, double y, const QuadratureSpec& spec = {},
                   double t_scale = 1.0);

/// d/dx T(x, x) from the closed form (no finite differences).
Complex gl_T_diagonal_derivative(const GLSolution& sol, double x);

/// q(x) = -2 d/dx T(x, x) by central differences with step h.
double potential_q(const GLSolution& sol, double x, double h = 1e-4);

/// q(x) from the analytic derivative.
double potential_q_analytic(const GLSolution& sol, double x);

/// (T(x, x), central difference of log det(I + lambda R_x)).
std::pair<Complex, Complex> logdet_diagonal_check(const GLSolution& sol, double x,
                                                  double h = 1e-4);

/// psi(x; k) = e^{ikx} + int_x^inf e^{iky} T(x, y) dy, evaluated in closed form.
Complex wavefunction(const GLSolution& sol, double x, double k);

/// The same integral by quadrature.
Complex wavefunction_quadrature(const GLSolution& sol, double x, double k,
                                const QuadratureSpec& spec = {});

/// |-psi'' + q psi - k^2 psi| with a 5-point second difference of step h.
double schrodinger_residual(const GLSolution& sol, double x, double k, double h = 1e-3);

/// max |T_xx - T_yy - q(x) T| at (x, y) by 5-point differences.
double gl_pde_residual(const GLSolution& sol, double x, double y, double h = 1e-3);

// Matrix (Zakharov-Shabat) equation, G_x = I + lambda^2 Q_x L_x.

/// V(x, y) = -lambda B^dagger exp(-A^dagger x) G_x^{-1} exp(-A^dagger y) C^dagger.
Complex zs_V(const GLSolution& sol, double x, double y);

/// conj(U)(x, y) = -lambda^2 B^dagger exp(-A^dagger x) G_x^{-1} Q_x exp(-Ay) B.
Complex zs_Ubar(const GLSolution& sol, double x, double y);

Complex zs_U(const GLSolution& sol, double x, double y);

/// 2x2 kernel [[conj U, V], [-conj V, U]].
Matrix zs_T(const GLSolution& sol, double x, double y);

/// det G_x.
Complex zs_det_G(const GLSolution& sol, double x);

/// (U(x, x), (1/2) d/dx log det G_x by central differences).
std::pair<Complex, Complex> zs_diag_logdet_check(const GLSolution& sol, double x,
                                                 double h = 1e-4);

/// |q(x)|^2 = d^2/dx^2 log det G_x by a 5-point second difference.
/// NumericalFailure if the value is below -1e-8.
double nls_potential_sq(const GLSolution& sol, double x, double h = 1e-3);

/// q(x) = -2 V(x, x).
Complex zs_potential(const GLSolution& sol, double x);

/// W(x) = -2 d/dx T(x, x) by central differences.
Matrix zs_W(const GLSolution& sol, double x, double h = 1e-4);

/// |V(x,y) + lambda conj phi(x+y) + lambda^2 int int V(x,s) phi(s+z) conj phi(y+z) ds dz|.
double zs_reduced_residual(const GLSolution& sol, double x, double y,
                           const QuadratureSpec& spec = {});

/// lambda int_x^inf V(x, z) phi(z + y) dz by quadrature.
Complex zs_Ubar_quadrature(const GLSolution& sol, double x, double y,
                           const QuadratureSpec& spec = {});

/// Frobenius norm of T_xx - T_yy - W(x) T at (x, y).
double zs_pde_residual(const GLSolution& sol, double x, double y, double h = 1e-3);

}  // namespace detfield
