#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "detfield/linalg.hpp"
#include "detfield/realization.hpp"

namespace detfield {

/// Which operator supplies the point-field kernel.
///   self_adjoint: A = A^dagger, C = B^dagger; kernel Q_x.
///   real_symbol:  phi real; kernel Gamma^2, spectrum eig(R_x)^2.
///   general:      kernel Gamma Gamma^dagger, spectrum eig(Q^{1/2} L Q^{1/2}).
enum class FieldCase { self_adjoint, real_symbol, general };

/// Eigenvalues of the point-field operator beyond x, ascending, in [0, 1].
/// HypothesisViolation when the case's structural or norm hypotheses fail.
RealVector spectrum_for_case(const StateSpaceSystem& sys, double x, FieldCase field_case);

/// Law of the number of points as a sum of independent Bernoulli(lambda_j).
class CountDistribution {
 public:
  CountDistribution() : probabilities_{1.0} {}
  CountDistribution(std::vector<double> eigenvalues, std::vector<double> probabilities,
                    std::size_t clamped);

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  /// Number of eigenvalues pulled back into [0, 1] from within tolerance.
  std::size_t clamped_count() const { return clamped_; }
  double mean() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> probabilities_;
  std::size_t clamped_ = 0;
};

/// Eigenvalues must lie in [-1e-10, 1 + 1e-10]; values within tolerance are
/// clamped. Coefficients of prod_j ((1 - lambda_j) + lambda_j z).
CountDistribution count_distribution(const std::vector<double>& eigenvalues);
CountDistribution count_distribution(const RealVector& eigenvalues);

/// prod_j (1 + (z - 1) lambda_j).
Complex generating_function(const CountDistribution& cd, Complex z);

/// P[no points] = prod_j (1 - lambda_j).
double gap_probability(const CountDistribution& cd);

/// F'(x) / F(x) = trace((A + A^dagger) Q_x (I - Q_x)^{-1}).
double density_ratio(const StateSpaceSystem& sys, double x);

/// det[K(x_i, x_j)].
double correlation(const std::function<double(double, double)>& kernel,
                   const std::vector<double>& points);

/// Inverse-CDF draw of the count.
std::size_t sample_count(const CountDistribution& cd, std::mt19937_64& rng);
std::size_t sample_count(const CountDistribution& cd, std::uint64_t seed);

}  // namespace detfield
