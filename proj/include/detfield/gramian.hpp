#pragma once

#include <utility>

#include "detfield/linalg.hpp"
#include "detfield/realization.hpp"

namespace detfield {

struct GramianBundle {
  double x = 0.0;
  Matrix Q;  // observability Gramian, Hermitian PSD
  Matrix L;  // controllability Gramian, Hermitian PSD
  Matrix R;  // int_x^inf exp(-yA) B C exp(-yA) dy
};

/// Q_x = int_x^inf exp(-tA^dagger) C^dagger C exp(-tA) dt.
///
/// Closed form in the eigenbasis of A; if the eigenvector matrix is badly
/// conditioned the x = 0 integral is evaluated by composite Gauss-Legendre
/// quadrature and transported with Q_x = exp(-xA^dagger) Q_0 exp(-xA).
/// Valid for every real x.
Matrix obs_gramian(const StateSpaceSystem& sys, double x);

/// L_x = int_x^inf exp(-tA) B B^dagger exp(-tA^dagger) dt.
Matrix ctrl_gramian(const StateSpaceSystem& sys, double x);

/// R_x = int_x^inf exp(-yA) B C exp(-yA) dy.
Matrix hankel_product_R(const StateSpaceSystem& sys, double x);

GramianBundle gramians(const StateSpaceSystem& sys, double x);

/// Same three matrices from the Lyapunov / Sylvester equations
///   A^dagger Q + Q A = exp(-xA^dagger) C^dagger C exp(-xA),
///   A L + L A^dagger = exp(-xA) B B^dagger exp(-xA^dagger),
///   A R + R A       = exp(-xA) B C exp(-xA),
/// solved by Bartels-Stewart. Independent of the eigenbasis path.
GramianBundle gramians_by_sylvester(const StateSpaceSystem& sys, double x);

/// max of the Frobenius residuals of the two Lyapunov equations.
double lyapunov_residual(const StateSpaceSystem& sys, double x);
double lyapunov_residual(const StateSpaceSystem& sys, double x, const Matrix& q, const Matrix& l);

/// (central difference of trace Q_x at step h, -phi(2x)).
/// The identity needs A = A^dagger and C = B^dagger; other systems raise
/// HypothesisViolation.
std::pair<double, double> trace_derivative_check(const StateSpaceSystem& sys, double x,
                                                 double h = 1e-5);

/// (trace Q_0, (1/2pi) int ||C (iy + A)^{-1}||^2 dy).
///
/// The frequency integral uses y = s tan(theta) with Gauss-Legendre in theta
/// at n and 2n nodes; NumericalFailure if the two disagree by more than tol
/// (relative).
std::pair<double, double> plancherel_trace_check(const StateSpaceSystem& sys,
                                                 std::size_t n = 400, double tol = 1e-9);

}  // namespace detfield
