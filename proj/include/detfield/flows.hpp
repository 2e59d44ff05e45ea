#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "detfield/linalg.hpp"
#include "detfield/realization.hpp"

namespace detfield {

/// c_j^2 -> c_j^2 exp(-2 kappa_j^3 t); kappa_j unchanged.
ScatteringData kdv_evolve(const ScatteringData& data, double t);

/// Potential recovered at unit coupling from the evolved data; 0 for empty data.
double kdv_potential(const ScatteringData& data, double x, double t);

/// |4 u_t - u_xxx + 6 u u_x| by central differences.
double kdv_pde_residual(const ScatteringData& data, double x, double t, double h_x = 1e-2,
                        double h_t = 1e-3);

/// Lax pair families.
///   kdv:             field is v (mKdV); V = [[v, z], [z, -v]] with the cubic Z.
///   kdv_schrodinger: field is u (KdV); U = [[0, 1], [u - z^2, 0]] with its cubic W.
///   nls:             field is u (NLS); W = [[-iz, u], [-conj u, iz]] with the quadratic Z.
enum class LaxKind { kdv, kdv_schrodinger, nls };

struct LaxPairField {
  std::function<Complex(double, double)> u;  // (x, t) -> field value
  LaxKind kind = LaxKind::kdv;
};

/// x-part of the Lax pair at (x, t, z); derivatives of the field by central
/// differences of step h.
Matrix lax_x_matrix(const LaxPairField& field, double x, double t, Complex z, double h);

/// t-part of the Lax pair.
Matrix lax_t_matrix(const LaxPairField& field, double x, double t, Complex z, double h);

/// ||dV/dt - dZ/dx + [V, Z]||_F with central differences of step h.
double zero_curvature_residual(const LaxPairField& field, double x, double t, Complex z,
                               double h = 1e-3);

using SpinorSample = std::array<Complex, 2>;

/// Coefficients beta, gamma, delta of the mKdV t-matrix at a point (x, t).
struct CubicCoefficients {
  Complex beta = 0.0;
  Complex gamma = 0.0;
  Complex delta = 0.0;
};

enum class KernelDerivative { x, t };

/// <J Psi(kappa), Psi(k)> / (i (kappa - k)) with the bilinear pairing and
/// J = [[0, -1], [1, 0]]. InvalidArgument when kappa == k.
Complex integrable_kernel(const SpinorSample& psi_kappa, const SpinorSample& psi_k, double kappa,
                          double k);

/// Numerical rank of the sampled derivative kernel over the grid (both
/// arguments on the same grid): singular values above threshold * sigma_max.
/// InvalidArgument for fewer than 4 grid points.
std::size_t derivative_kernel_rank(const std::vector<double>& k_grid,
                                   const std::vector<SpinorSample>& psi, KernelDerivative which,
                                   const CubicCoefficients& coeffs = {},
                                   double svd_threshold = 1e-10);

/// The sampled derivative kernel matrix itself.
Matrix derivative_kernel_matrix(const std::vector<double>& k_grid,
                                const std::vector<SpinorSample>& psi, KernelDerivative which,
                                const CubicCoefficients& coeffs = {});

}  // namespace detfield
