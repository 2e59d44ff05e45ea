#include "detfield/pointfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detfield/errors.hpp"
#include "detfield/gramian.hpp"

namespace detfield {
namespace {

constexpr double kSpectrumTol = 1e-10;

void require_norm_below_one(const Matrix& m, const char* name) {
  const double norm = operator_norm(m);
  if (norm >= 1.0) {
    throw HypothesisViolation(std::string("||") + name + "|| = " + std::to_string(norm) +
                              " >= 1");
  }
}

}  // namespace

RealVector spectrum_for_case(const StateSpaceSystem& sys, double x, FieldCase field_case) {
  RealVector mu;
  switch (field_case) {
    case FieldCase::self_adjoint: {
      if (!sys.is_self_adjoint(1e-12)) {
        throw HypothesisViolation("self-adjoint case needs A = A^dagger and C = B^dagger");
      }
      const Matrix q = obs_gramian(sys, x);
      require_norm_below_one(q, "Q_x");
      mu = hermitian_eigenvalues(q);
      break;
    }
    case FieldCase::real_symbol: {
      double scale = 0.0;
      double imag = 0.0;
      for (int i = 0; i <= 16; ++i) {
        const Complex v = sys.impulse(2.0 * x + 0.25 * i);
        scale = std::max(scale, std::abs(v));
        imag = std::max(imag, std::abs(v.imag()));
      }
      if (imag > 1e-12 * std::max(scale, 1e-300)) {
        throw HypothesisViolation("real-symbol case needs phi real");
      }
      const Matrix r = hankel_product_R(sys, x);
      Eigen::ComplexEigenSolver<Matrix> es(r, false);
      const Vector ev = es.eigenvalues();
      mu.resize(ev.size());
      for (Index j = 0; j < ev.size(); ++j) {
        if (std::abs(ev(j).imag()) > kSpectrumTol * std::max(1.0, std::abs(ev(j)))) {
          throw HypothesisViolation("real-symbol case: R_x has non-real eigenvalues");
        }
        if (std::abs(ev(j).real()) >= 1.0) {
          throw HypothesisViolation("real-symbol case: ||Gamma|| = " +
                                    std::to_string(std::abs(ev(j).real())) + " >= 1");
        }
        mu(j) = ev(j).real() * ev(j).real();
      }
      std::sort(mu.data(), mu.data() + mu.size());
      break;
    }
    case FieldCase::general: {
      const Matrix q = obs_gramian(sys, x);
      const Matrix l = ctrl_gramian(sys, x);
      require_norm_below_one(q, "Q_x");
      require_norm_below_one(l, "L_x");
      const Matrix root = psd_sqrt(q);
      mu = hermitian_eigenvalues(root * l * root);
      break;
    }
  }
  for (Index j = 0; j < mu.size(); ++j) mu(j) = std::clamp(mu(j), 0.0, 1.0);
  return mu;
}

CountDistribution::CountDistribution(std::vector<double> eigenvalues,
                                     std::vector<double> probabilities, std::size_t clamped)
    : eigenvalues_(std::move(eigenvalues)),
      probabilities_(std::move(probabilities)),
      clamped_(clamped) {}

double CountDistribution::mean() const {
  double acc = 0.0;
  for (double l : eigenvalues_) acc += l;
  return acc;
}

CountDistribution count_distribution(const std::vector<double>& eigenvalues) {
  std::vector<double> lam;
  lam.reserve(eigenvalues.size());
  std::size_t clamped = 0;
  for (double l : eigenvalues) {
    if (!std::isfinite(l) || l < -kSpectrumTol || l > 1.0 + kSpectrumTol) {
      throw InvalidArgument("count_distribution: eigenvalue " + std::to_string(l) +
                            " outside [0, 1]");
    }
    const double c = std::clamp(l, 0.0, 1.0);
    if (c != l) ++clamped;
    lam.push_back(c);
  }
  std::vector<double> p(lam.size() + 1, 0.0);
  p[0] = 1.0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    for (std::size_t n = j + 1; n > 0; --n) p[n] = p[n] * (1.0 - lam[j]) + p[n - 1] * lam[j];
    p[0] *= 1.0 - lam[j];
  }
  return CountDistribution(std::move(lam), std::move(p), clamped);
}

CountDistribution count_distribution(const RealVector& eigenvalues) {
  return count_distribution(std::vector<double>(eigenvalues.data(),
                                                eigenvalues.data() + eigenvalues.size()));
}

Complex generating_function(const CountDistribution& cd, Complex z) {
  Complex acc = 1.0;
  for (double l : cd.eigenvalues()) acc *= 1.0 + (z - 1.0) * l;
  return acc;
}

double gap_probability(const CountDistribution& cd) {
  return cd.probabilities().front();
}

double density_ratio(const StateSpaceSystem& sys, double x) {
  const Matrix q = obs_gramian(sys, x);
  require_norm_below_one(q, "Q_x");
  const Index n = sys.dim();
  const Matrix resolvent = (Matrix::Identity(n, n) - q).partialPivLu().inverse();
  return ((sys.a() + sys.a().adjoint()) * q * resolvent).trace().real();
}

double correlation(const std::function<double(double, double)>& kernel,
                   const std::vector<double>& points) {
  const Index n = static_cast<Index>(points.size());
  if (n == 0) return 1.0;
  RealMatrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      k(i, j) = kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
    }
  }
  return k.fullPivLu().determinant();
}

std::size_t sample_count(const CountDistribution& cd, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const auto& p = cd.probabilities();
  double cdf = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    cdf += p[n];
    if (u < cdf) return n;
  }
  // Rounding left the total just below u; take the last state with mass.
  for (std::size_t n = p.size(); n > 0; --n) {
    if (p[n - 1] > 0.0) return n - 1;
  }
  return 0;
}

std::size_t sample_count(const CountDistribution& cd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_count(cd, rng);
}

}  // namespace detfield
