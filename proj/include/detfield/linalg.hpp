#pragma once

#include <complex>

#include <Eigen/Core>

namespace detfield {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvector matrices with condition number above this are treated as
/// numerically defective; callers switch to a decomposition-free path.
inline constexpr double kEigenbasisConditionLimit = 1e8;

/// Returns exp(-t M).
///
/// Uses the eigendecomposition of M when its eigenvector matrix has
/// condition number below kEigenbasisConditionLimit, and Pade
/// scaling-and-squaring otherwise. Throws InvalidArgument on non-finite input.
Matrix matrix_exponential(const Matrix& m, double t);

/// Pade scaling-and-squaring exp(-t M), without the eigenbasis shortcut.
Matrix matrix_exponential_pade(const Matrix& m, double t);

/// Solves A X + X B = C by the Bartels-Stewart method (complex Schur forms of
/// A and B, then a column-by-column triangular sweep). Throws SingularMatrix
/// when A and -B share an eigenvalue to working precision.
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

/// 2-norm condition number of a square matrix (inf if singular).
double condition_number(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Frobenius norm of M - M^dagger.
double hermitian_defect(const Matrix& m);

/// (M + M^dagger) / 2.
Matrix hermitian_part(const Matrix& m);

/// Principal square root of a Hermitian positive semidefinite matrix; tiny
/// negative eigenvalues from rounding are clamped to zero.
Matrix psd_sqrt(const Matrix& m);

/// Eigenvalues of the Hermitian part of M, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

bool all_finite(const Matrix& m);

}  // namespace detfield
