#include "detfield/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "detfield/errors.hpp"

namespace detfield {

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_defect(const Matrix& m) {
  return (m - m.adjoint()).norm();
}

Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  RealVector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix matrix_exponential_pade(const Matrix& m, double t) {
  if (!all_finite(m) || !std::isfinite(t)) {
    throw InvalidArgument("matrix_exponential: non-finite input");
  }
  Matrix scaled = -t * m;
  return scaled.exp();
}

Matrix matrix_exponential(const Matrix& m, double t) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("matrix_exponential: matrix must be square");
  }
  if (!all_finite(m) || !std::isfinite(t)) {
    throw InvalidArgument("matrix_exponential: non-finite input");
  }
  if (m.size() == 0) return m;

  Eigen::ComplexEigenSolver<Matrix> es(m);
  if (es.info() == Eigen::Success) {
    const Matrix& v = es.eigenvectors();
    Eigen::PartialPivLU<Matrix> lu(v);
    if (condition_number(v) <= kEigenbasisConditionLimit) {
      Vector d = (-t * es.eigenvalues()).array().exp();
      return v * d.asDiagonal() * lu.inverse();
    }
  }
  return matrix_exponential_pade(m, t);
}

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || c.rows() != a.rows() ||
      c.cols() != b.rows()) {
    throw InvalidArgument("solve_sylvester: inconsistent dimensions");
  }
  // A = U T U^*, B = V S V^*; then T Y + Y S = U^* C V with X = U Y V^*.
  Eigen::ComplexSchur<Matrix> schur_a(a);
  Eigen::ComplexSchur<Matrix> schur_b(b);
  const Matrix& u = schur_a.matrixU();
  const Matrix& tri_a = schur_a.matrixT();
  const Matrix& v = schur_b.matrixU();
  const Matrix& tri_b = schur_b.matrixT();

  const Matrix f = u.adjoint() * c * v;
  const Index m = a.rows();
  const Index n = b.rows();
  Matrix y(m, n);
  const double scale = tri_a.cwiseAbs().maxCoeff() + tri_b.cwiseAbs().maxCoeff() + 1.0;

  for (Index k = 0; k < n; ++k) {
    Vector rhs = f.col(k);
    for (Index j = 0; j < k; ++j) rhs -= tri_b(j, k) * y.col(j);
    // Back substitution on the upper-triangular (T + S_kk I).
    for (Index i = m - 1; i >= 0; --i) {
      Complex s = rhs(i);
      for (Index j = i + 1; j < m; ++j) s -= tri_a(i, j) * y(j, k);
      const Complex pivot = tri_a(i, i) + tri_b(k, k);
      if (std::abs(pivot) <= 1e3 * std::numeric_limits<double>::epsilon() * scale) {
        throw SingularMatrix("solve_sylvester: A and -B share an eigenvalue");
      }
      y(i, k) = s / pivot;
    }
  }
  return u * y * v.adjoint();
}

}  // namespace detfield
