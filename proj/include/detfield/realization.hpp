#pragma once

#include <cstddef>
#include <vector>

#include "detfield/linalg.hpp"

namespace detfield {

/// Default cap on the state dimension of a StateSpaceSystem.
inline constexpr Index kDefaultMaxStateDim = 64;

struct BoundState {
  double kappa;  // decay rate, > 0
  double c;      // norming constant, > 0
};

/// Bound states of a reflectionless potential. The constructor rejects
/// nonpositive or non-finite entries and duplicate decay rates. An empty
/// list is allowed (zero potential).
class ScatteringData {
 public:
  ScatteringData() = default;
  explicit ScatteringData(std::vector<BoundState> bound_states);

  const std::vector<BoundState>& bound_states() const { return bound_states_; }
  std::size_t size() const { return bound_states_.size(); }
  bool empty() const { return bound_states_.empty(); }

 private:
  std::vector<BoundState> bound_states_;
};

/// Linear system (-A, B, C) with scalar input and output; impulse response
/// phi(x) = C exp(-xA) B.
///
/// Immutable. The eigendecomposition of A is computed once at construction
/// and reused by every closed-form evaluation.
class StateSpaceSystem {
 public:
  /// Throws InvalidArgument on inconsistent shapes, non-finite entries, an
  /// empty or oversized state space, or an eigenvalue of A with nonpositive
  /// real part.
  StateSpaceSystem(Matrix a, Matrix b, Matrix c, Index max_dim = kDefaultMaxStateDim);

  Index dim() const { return a_.rows(); }
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }

  /// Eigenvalues kappa_j of A and the matrices V, V^{-1} with A = V diag(kappa) V^{-1}.
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  const Matrix& eigenvectors_inverse() const { return eigenvectors_inverse_; }

  /// B and C expressed in the eigenbasis: V^{-1} B and C V.
  const Vector& modal_input() const { return modal_b_; }
  const RowVector& modal_output() const { return modal_c_; }

  double eigenbasis_condition() const { return eigenbasis_condition_; }
  /// True when the closed forms in the eigenbasis are trusted.
  bool has_stable_eigenbasis() const { return eigenbasis_condition_ <= kEigenbasisConditionLimit; }

  /// Smallest real part among the eigenvalues of A.
  double min_decay_rate() const;

  /// exp(-tA), for any real t.
  Matrix propagator(double t) const;

  /// C exp(-tA) B for any real t (no sign check).
  Complex impulse(double t) const;

  /// A = A^dagger and C = B^dagger to a relative tolerance.
  bool is_self_adjoint(double tol = 1e-12) const;

 private:
  Matrix a_;
  Matrix b_;
  Matrix c_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
  Matrix eigenvectors_inverse_;
  Vector modal_b_;
  RowVector modal_c_;
  double eigenbasis_condition_ = 1.0;
};

/// A = diag(kappa_j), B = (c_j), C = B^dagger. Throws InvalidArgument for
/// empty data.
StateSpaceSystem realize_from_bound_states(const ScatteringData& data);

/// C exp(-xA) B; x must be finite and nonnegative.
Complex phi(const StateSpaceSystem& sys, double x);

/// The shifted system (A, exp(-xA) B, C exp(-xA)), whose impulse response is
/// t -> phi(2x + t).
StateSpaceSystem shift(const StateSpaceSystem& sys, double x);

/// C (lambda I + A)^{-1} B. Throws SingularMatrix at a pole.
Complex transfer(const StateSpaceSystem& sys, Complex lambda);

struct HypothesisReport {
  double traceclass_bound = 0.0;  // sum_j |C v_j|^2 / Re kappa_j
  double norm_Q0 = 0.0;
  double norm_L0 = 0.0;
  bool ok = false;                // both norms strictly below 1
};

HypothesisReport validate_hypotheses(const StateSpaceSystem& sys);

}  // namespace detfield
