#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "detfield/linalg.hpp"
#include "detfield/quadrature.hpp"

namespace detfield {

/// Ai(x) and Ai'(x) for x >= -200: long-double power series for |x| <= 8,
/// asymptotic expansions beyond. InvalidArgument below -200.
double airy(double x);
double airy_prime(double x);

/// (Ai(x-l) Ai'(y-l) - Ai'(x-l) Ai(y-l)) / (x - y); on the diagonal
/// Ai'(x-l)^2 - (x-l) Ai(x-l)^2.
double airy_kernel(double x, double y, double lambda = 0.0);

/// (airy_kernel(x, y, lambda), int_0^inf Ai(x+u-lambda) Ai(u+y-lambda) du),
/// the integral by n-point Gauss-Legendre on a truncated range.
std::pair<double, double> airy_square_check(double x, double y, double lambda = 0.0,
                                            std::size_t n = 200);

/// sin(x - y) / (pi (x - y)), 1/pi on the diagonal.
double sine_kernel(double x, double y);

/// Kernel Psi(y)^T J Psi(x) / (x - y) of a Hamiltonian system
/// J Psi' = (lambda E + F) Psi, with J = [[0, -I_m], [I_m, 0]].
struct HamiltonianKernel {
  std::function<RealVector(double)> psi;
  std::function<RealMatrix(double)> e;
  std::function<RealMatrix(double)> f;
  double lambda = 0.0;
  Index m = 1;
};

/// Off the diagonal the bilinear form over (x - y); on it <Psi, (lambda E + F) Psi>.
/// InvalidArgument when <J Psi(x), Psi(x)> exceeds 1e-8 or E, F are not symmetric.
double hamiltonian_kernel(const HamiltonianKernel& hk, double x, double y);

/// Psi = (Ai(x - lambda), Ai'(x - lambda)), E = [[1,0],[0,0]], F = [[-x,0],[0,1]].
HamiltonianKernel airy_hamiltonian_kernel(double lambda = 0.0);

/// (sum of eigenvalues of the Nystrom matrix, quadrature of K(x, x)).
/// HypothesisViolation if an eigenvalue is below -1e-8.
std::pair<double, double> mercer_trace(const std::function<double(double, double)>& kernel,
                                       const QuadratureRule& rule);
std::pair<double, double> mercer_trace(const std::function<double(double, double)>& kernel,
                                       double a, double b, std::size_t n);

/// det(I - K_Airy) on (s, inf) by Nystrom on (s, max(s, 0) + 12).
double tw_gap_direct(double s, std::size_t n);

/// det(I - G) det(I + G) with G the Hankel operator of kernel Ai(a + b + s).
double tw_gap_hankel(double s, std::size_t n);

/// tw_gap_direct at n, checked against 2n. Needs s in [-8, 6] and n >= 100;
/// NumericalFailure when the two resolutions differ by more than 1e-8.
double tw_gap(double s, std::size_t n = 120);

}  // namespace detfield
