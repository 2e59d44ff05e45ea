#include "detfield/realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detfield/errors.hpp"
#include "detfield/gramian.hpp"

namespace detfield {

ScatteringData::ScatteringData(std::vector<BoundState> bound_states)
    : bound_states_(std::move(bound_states)) {
  for (std::size_t i = 0; i < bound_states_.size(); ++i) {
    const auto& s = bound_states_[i];
    if (!std::isfinite(s.kappa) || !(s.kappa > 0.0)) {
      throw InvalidArgument("bound state " + std::to_string(i) + ": kappa must be positive");
    }
    if (!std::isfinite(s.c) || !(s.c > 0.0)) {
      throw InvalidArgument("bound state " + std::to_string(i) + ": c must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (bound_states_[j].kappa == s.kappa) {
        throw InvalidArgument("bound states " + std::to_string(j) + " and " + std::to_string(i) +
                              " share kappa");
      }
    }
  }
}

StateSpaceSystem::StateSpaceSystem(Matrix a, Matrix b, Matrix c, Index max_dim)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const Index n = a_.rows();
  if (n < 1) throw InvalidArgument("system: state dimension must be at least 1");
  if (n > max_dim) {
    throw InvalidArgument("system: state dimension " + std::to_string(n) + " exceeds cap " +
                          std::to_string(max_dim));
  }
  if (a_.cols() != n) throw InvalidArgument("system: A must be square");
  if (b_.rows() != n || b_.cols() != 1) throw InvalidArgument("system: B must be n x 1");
  if (c_.rows() != 1 || c_.cols() != n) throw InvalidArgument("system: C must be 1 x n");
  if (!all_finite(a_) || !all_finite(b_) || !all_finite(c_)) {
    throw InvalidArgument("system: non-finite entries");
  }

  if (hermitian_defect(a_) <= 1e-14 * (1.0 + a_.norm())) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a_));
    eigenvalues_ = es.eigenvalues().cast<Complex>();
    eigenvectors_ = es.eigenvectors();
    eigenvectors_inverse_ = eigenvectors_.adjoint();
    eigenbasis_condition_ = 1.0;
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(a_);
    if (es.info() != Eigen::Success) {
      throw NumericalFailure("system: eigendecomposition of A failed");
    }
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    eigenbasis_condition_ = condition_number(eigenvectors_);
    if (std::isfinite(eigenbasis_condition_)) {
      eigenvectors_inverse_ = eigenvectors_.partialPivLu().inverse();
    } else {
      eigenvectors_inverse_ = Matrix::Zero(n, n);
    }
  }
  for (Index j = 0; j < n; ++j) {
    if (!(eigenvalues_(j).real() > 0.0)) {
      throw InvalidArgument("system: eigenvalue of A with nonpositive real part");
    }
  }
  modal_b_ = eigenvectors_inverse_ * b_;
  modal_c_ = c_ * eigenvectors_;
}

double StateSpaceSystem::min_decay_rate() const {
  return eigenvalues_.real().minCoeff();
}

Matrix StateSpaceSystem::propagator(double t) const {
  if (!std::isfinite(t)) throw InvalidArgument("propagator: non-finite t");
  if (has_stable_eigenbasis()) {
    const Vector d = (-t * eigenvalues_).array().exp();
    return eigenvectors_ * d.asDiagonal() * eigenvectors_inverse_;
  }
  return matrix_exponential_pade(a_, t);
}

Complex StateSpaceSystem::impulse(double t) const {
  if (has_stable_eigenbasis()) {
    Complex acc = 0.0;
    for (Index j = 0; j < dim(); ++j) {
      acc += modal_c_(j) * modal_b_(j) * std::exp(-t * eigenvalues_(j));
    }
    return acc;
  }
  return (c_ * propagator(t) * b_)(0, 0);
}

bool StateSpaceSystem::is_self_adjoint(double tol) const {
  const double scale_a = 1.0 + a_.norm();
  const double scale_b = 1.0 + b_.norm();
  return hermitian_defect(a_) <= tol * scale_a &&
         (c_ - b_.adjoint()).norm() <= tol * scale_b;
}

StateSpaceSystem realize_from_bound_states(const ScatteringData& data) {
  if (data.empty()) throw InvalidArgument("realize_from_bound_states: no bound states");
  const Index n = static_cast<Index>(data.size());
  Matrix a = Matrix::Zero(n, n);
  Matrix b(n, 1);
  for (Index j = 0; j < n; ++j) {
    const auto& s = data.bound_states()[static_cast<std::size_t>(j)];
    a(j, j) = s.kappa;
    b(j, 0) = s.c;
  }
  Matrix c = b.adjoint();
  return StateSpaceSystem(std::move(a), std::move(b), std::move(c));
}

Complex phi(const StateSpaceSystem& sys, double x) {
  if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("phi: x must be finite and >= 0");
  return sys.impulse(x);
}

StateSpaceSystem shift(const StateSpaceSystem& sys, double x) {
  if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("shift: x must be finite and >= 0");
  const Matrix e = sys.propagator(x);
  return StateSpaceSystem(sys.a(), e * sys.b(), sys.c() * e, std::max<Index>(sys.dim(), kDefaultMaxStateDim));
}

Complex transfer(const StateSpaceSystem& sys, Complex lambda) {
  const Index n = sys.dim();
  double gap = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) gap = std::min(gap, std::abs(lambda + sys.eigenvalues()(j)));
  const double scale = 1.0 + std::abs(lambda) + sys.a().norm();
  if (gap <= 1e3 * std::numeric_limits<double>::epsilon() * scale) {
    throw SingularMatrix("transfer: lambda is a pole (eigenvalue of -A)");
  }
  Matrix m = sys.a();
  m.diagonal().array() += lambda;
  Eigen::PartialPivLU<Matrix> lu(m);
  return (sys.c() * lu.solve(sys.b()))(0, 0);
}

HypothesisReport validate_hypotheses(const StateSpaceSystem& sys) {
  HypothesisReport report;
  const Matrix& v = sys.eigenvectors();
  for (Index j = 0; j < sys.dim(); ++j) {
    const Complex cv = (sys.c() * v.col(j))(0, 0);
    report.traceclass_bound += std::norm(cv) / sys.eigenvalues()(j).real();
  }
  report.norm_Q0 = operator_norm(obs_gramian(sys, 0.0));
  report.norm_L0 = operator_norm(ctrl_gramian(sys, 0.0));
  report.ok = report.norm_Q0 < 1.0 && report.norm_L0 < 1.0;
  return report;
}

}  // namespace detfield
