#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "detfield/linalg.hpp"
#include "detfield/quadrature.hpp"
#include "detfield/realization.hpp"

namespace detfield {

/// Nystrom discretization M_ij = sqrt(w_i) k(t_i, t_j) sqrt(w_j).
struct DiscretizedKernel {
  std::vector<double> nodes;
  std::vector<double> weights;
  Matrix M;
  /// Size of the neglected tail for truncated rules (0 for untruncated).
  double truncation_bound = 0.0;
  bool truncation_ok = true;

  Index size() const { return M.rows(); }
};

enum class NystromScheme { legendre, laguerre };

DiscretizedKernel discretize_kernel(const QuadratureRule& rule,
                                    const std::function<Complex(double, double)>& kernel);

/// Truncation length used when none is given: max(20 / kappa_min, 10).
double default_truncation(const StateSpaceSystem& sys);

/// Hankel kernel phi(2x + s + t) on (0, L) (legendre) or (0, inf) (laguerre).
/// L <= 0 selects default_truncation(sys).
DiscretizedKernel nystrom_hankel(const StateSpaceSystem& sys, double x, std::size_t n = 200,
                                 double length = 0.0,
                                 NystromScheme scheme = NystromScheme::legendre);

/// Kernel C exp(-sA) exp(-tA^dagger) C^dagger on (x, x + L); its nonzero
/// spectrum is that of Q_x.
DiscretizedKernel nystrom_gramian_kernel(const StateSpaceSystem& sys, double x,
                                         std::size_t n = 200, double length = 0.0);

/// det(I + (z - 1) M) by LU with partial pivoting.
Complex det_shifted(const Matrix& m, Complex z);

/// prod_j (1 + (z - 1) mu_j) over the eigenvalues of the Hermitian part of M.
Complex det_shifted_eigen(const Matrix& m, Complex z);

/// sum_j log(1 + (z - 1) mu_j), principal branch. Throws InvalidArgument
/// when a factor lies on the closed negative real axis.
Complex log_det_shifted(const Matrix& m, Complex z);

/// det(I - Q_x); HypothesisViolation when ||Q_x|| >= 1.
double det_gap(const StateSpaceSystem& sys, double x);

/// det(I - lambda Q_x).
Complex det_gramian(const StateSpaceSystem& sys, double x, Complex lambda);

/// det(I - lambda R_x), the Fredholm determinant of the shifted Hankel operator.
Complex det_hankel_via_R(const StateSpaceSystem& sys, double x, Complex lambda);

/// det(I - lambda^2 Gamma^2) = det(I - lambda R_x) det(I + lambda R_x).
Complex det_square(const StateSpaceSystem& sys, double x, Complex lambda);

/// det(I + (z - 1) L_x Q_x).
Complex det_zs(const StateSpaceSystem& sys, double x, Complex z);

/// (det(I + lambda Q_0), det(I + lambda U Q_0 U^dagger)). InvalidArgument
/// unless U is unitary to 1e-12.
std::pair<Complex, Complex> conjugation_invariance_check(const StateSpaceSystem& sys,
                                                         const Matrix& u, Complex lambda);

}  // namespace detfield
