#include "detfield/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detfield/errors.hpp"

namespace detfield {
namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kMinArgument = -200.0;
constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAiPrime0 = -0.258819403792806798405183560189203963L;

struct AiryPair {
  double ai;
  double aip;
};

AiryPair airy_series(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  // f = sum a_k x^{3k}, g = sum b_k x^{3k+1}; Ai = Ai(0) f + Ai'(0) g.
  long double a = 1.0L;
  long double b = x;
  long double f = a;
  long double g = b;
  long double fp = 0.0L;
  long double gp = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double kk = 3.0L * k;
    a *= x3 / ((kk - 1.0L) * kk);
    b *= x3 / (kk * (kk + 1.0L));
    f += a;
    g += b;
    if (x != 0.0L) {
      fp += kk * a / x;
      gp += (kk + 1.0L) * b / x;
    }
    const long double mag = std::fabs(a) + std::fabs(b);
    if (mag < 1e-24L * (std::fabs(f) + std::fabs(g)) && k > 3) break;
  }
  return {static_cast<double>(kAi0 * f + kAiPrime0 * g),
          static_cast<double>(kAi0 * fp + kAiPrime0 * gp)};
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AsymptoticCoefficients {
  std::vector<double> u;
  std::vector<double> v;
  AsymptoticCoefficients() {
    u.push_back(1.0);
    v.push_back(1.0);
    for (int k = 1; k < 40; ++k) {
      const double uk = u.back() * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                        (216.0 * k * (2.0 * k - 1.0));
      u.push_back(uk);
      v.push_back(-(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk);
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

// sum_k (-1)^k c[start + step k] / zeta^{start + step k}, stopped at the
// smallest term.
double asymptotic_sum(const std::vector<double>& c, double zeta, int start, int step) {
  double acc = 0.0;
  double prev = INFINITY;
  int sign = 1;
  for (std::size_t k = static_cast<std::size_t>(start); k < c.size(); k += static_cast<std::size_t>(step)) {
    const double term = c[k] / std::pow(zeta, static_cast<double>(k));
    if (std::abs(term) > prev) break;
    acc += sign * term;
    prev = std::abs(term);
    if (prev < 1e-17 * std::abs(acc)) break;
    sign = -sign;
  }
  return acc;
}

AiryPair airy_asymptotic(double x) {
  const auto& c = coefficients();
  const double z = std::abs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double root_pi = std::sqrt(std::numbers::pi);
  const double z14 = std::sqrt(std::sqrt(z));
  if (x > 0.0) {
    const double e = std::exp(-zeta);
    return {e / (2.0 * root_pi * z14) * asymptotic_sum(c.u, zeta, 0, 1),
            -z14 * e / (2.0 * root_pi) * asymptotic_sum(c.v, zeta, 0, 1)};
  }
  const double phase = zeta - 0.25 * std::numbers::pi;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const double ai = (cs * asymptotic_sum(c.u, zeta, 0, 2) + sn * asymptotic_sum(c.u, zeta, 1, 2)) /
                    (root_pi * z14);
  const double aip =
      z14 / root_pi * (sn * asymptotic_sum(c.v, zeta, 0, 2) - cs * asymptotic_sum(c.v, zeta, 1, 2));
  return {ai, aip};
}

AiryPair airy_both(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("airy: non-finite argument");
  if (x < kMinArgument) {
    throw InvalidArgument("airy: argument " + std::to_string(x) + " below validated range");
  }
  if (std::abs(x) <= kSeriesLimit) return airy_series(x);
  return airy_asymptotic(x);
}

double kernel_from_values(double x, double y, const AiryPair& px, const AiryPair& py) {
  if (x == y) return px.aip * px.aip - x * px.ai * px.ai;
  return (px.ai * py.aip - px.aip * py.ai) / (x - y);
}

}  // namespace

double airy(double x) { return airy_both(x).ai; }

double airy_prime(double x) { return airy_both(x).aip; }

double airy_kernel(double x, double y, double lambda) {
  const double sx = x - lambda;
  const double sy = y - lambda;
  return kernel_from_values(sx, sy, airy_both(sx), airy_both(sy));
}

std::pair<double, double> airy_square_check(double x, double y, double lambda, std::size_t n) {
  if (n < 100) throw InvalidArgument("airy_square_check: need at least 100 nodes");
  const double upper = 12.0 + std::max(0.0, lambda - std::min(x, y));
  const QuadratureRule rule = gauss_legendre(n, 0.0, upper);
  const double integral =
      rule.integrate([&](double u) { return airy(x + u - lambda) * airy(u + y - lambda); });
  return {airy_kernel(x, y, lambda), integral};
}

double sine_kernel(double x, double y) {
  if (x == y) return 1.0 / std::numbers::pi;
  return std::sin(x - y) / (std::numbers::pi * (x - y));
}

double hamiltonian_kernel(const HamiltonianKernel& hk, double x, double y) {
  const Index m = hk.m;
  auto j_times = [m](const RealVector& v) {
    RealVector out(2 * m);
    out.head(m) = -v.tail(m);
    out.tail(m) = v.head(m);
    return out;
  };
  const RealVector px = hk.psi(x);
  if (px.size() != 2 * m) throw InvalidArgument("hamiltonian_kernel: Psi must have 2m entries");
  if (std::abs(j_times(px).dot(px)) > 1e-8) {
    throw InvalidArgument("hamiltonian_kernel: <J Psi, Psi> does not vanish");
  }
  if (x != y) {
    const RealVector py = hk.psi(y);
    return py.dot(j_times(px)) / (x - y);
  }
  const RealMatrix e = hk.e(x);
  const RealMatrix f = hk.f(x);
  if ((e - e.transpose()).norm() > 1e-12 || (f - f.transpose()).norm() > 1e-12) {
    throw InvalidArgument("hamiltonian_kernel: E and F must be symmetric");
  }
  return px.dot((hk.lambda * e + f) * px);
}

HamiltonianKernel airy_hamiltonian_kernel(double lambda) {
  HamiltonianKernel hk;
  hk.lambda = lambda;
  hk.m = 1;
  hk.psi = [lambda](double x) {
    const AiryPair p = airy_both(x - lambda);
    RealVector v(2);
    v << p.ai, p.aip;
    return v;
  };
  hk.e = [](double) {
    RealMatrix e(2, 2);
    e << 1.0, 0.0, 0.0, 0.0;
    return e;
  };
  hk.f = [](double x) {
    RealMatrix f(2, 2);
    f << -x, 0.0, 0.0, 1.0;
    return f;
  };
  return hk;
}

std::pair<double, double> mercer_trace(const std::function<double(double, double)>& kernel,
                                       const QuadratureRule& rule) {
  const Index n = static_cast<Index>(rule.size());
  RealMatrix m(n, n);
  double diagonal = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double ti = rule.nodes[static_cast<std::size_t>(i)];
    const double wi = rule.weights[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      const double tj = rule.nodes[static_cast<std::size_t>(j)];
      const double wj = rule.weights[static_cast<std::size_t>(j)];
      m(i, j) = std::sqrt(wi * wj) * kernel(ti, tj);
    }
    diagonal += wi * kernel(ti, ti);
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw HypothesisViolation("mercer_trace: kernel is not positive semidefinite");
  }
  return {es.eigenvalues().sum(), diagonal};
}

std::pair<double, double> mercer_trace(const std::function<double(double, double)>& kernel,
                                       double a, double b, std::size_t n) {
  return mercer_trace(kernel, gauss_legendre(n, a, b));
}

double tw_gap_direct(double s, std::size_t n) {
  const QuadratureRule rule = gauss_legendre(n, s, std::max(s, 0.0) + 12.0);
  std::vector<AiryPair> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = airy_both(rule.nodes[i]);
  const Index size = static_cast<Index>(n);
  RealMatrix m(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = kernel_from_values(rule.nodes[i], rule.nodes[j], values[i], values[j]);
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          -std::sqrt(rule.weights[i] * rule.weights[j]) * k;
    }
  }
  m.diagonal().array() += 1.0;
  return m.partialPivLu().determinant();
}

double tw_gap_hankel(double s, std::size_t n) {
  const QuadratureRule rule = gauss_legendre(n, 0.0, 12.0 + std::max(0.0, -s));
  const Index size = static_cast<Index>(n);
  RealMatrix g(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v =
          std::sqrt(rule.weights[i] * rule.weights[j]) * airy(rule.nodes[i] + rule.nodes[j] + s);
      g(static_cast<Index>(i), static_cast<Index>(j)) = v;
      g(static_cast<Index>(j), static_cast<Index>(i)) = v;
    }
  }
  const RealMatrix id = RealMatrix::Identity(size, size);
  return RealMatrix(id - g).partialPivLu().determinant() *
         RealMatrix(id + g).partialPivLu().determinant();
}

double tw_gap(double s, std::size_t n) {
  if (!(s >= -8.0 && s <= 6.0)) throw InvalidArgument("tw_gap: s must lie in [-8, 6]");
  if (n < 100) throw InvalidArgument("tw_gap: need at least 100 nodes");
  const double coarse = tw_gap_direct(s, n);
  const double fine = tw_gap_direct(s, 2 * n);
  if (std::abs(coarse - fine) > 1e-8) {
    throw NumericalFailure("tw_gap: resolutions disagree by " + std::to_string(std::abs(coarse - fine)));
  }
  return fine;
}

}  // namespace detfield
