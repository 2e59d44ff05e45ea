#include "detfield/flows.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "detfield/errors.hpp"
#include "detfield/glsolver.hpp"

namespace detfield {

ScatteringData kdv_evolve(const ScatteringData& data, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("kdv_evolve: non-finite t");
  std::vector<BoundState> out;
  out.reserve(data.size());
  for (const auto& s : data.bound_states()) {
    // c^2 -> c^2 exp(-2 kappa^3 t)
    out.push_back({s.kappa, s.c * std::exp(-s.kappa * s.kappa * s.kappa * t)});
  }
  return ScatteringData(std::move(out));
}

double kdv_potential(const ScatteringData& data, double x, double t) {
  if (data.empty()) return 0.0;
  const GLSolution sol(realize_from_bound_states(kdv_evolve(data, t)), 1.0, GLKind::scalar);
  return potential_q_analytic(sol, x);
}

double kdv_pde_residual(const ScatteringData& data, double x, double t, double h_x, double h_t) {
  if (!(h_x > 0.0) || !(h_t > 0.0)) throw InvalidArgument("kdv_pde_residual: steps must be positive");
  if (data.empty()) return 0.0;
  auto u = [&](double xx, double tt) { return kdv_potential(data, xx, tt); };
  const double u0 = u(x, t);
  const double up1 = u(x + h_x, t);
  const double um1 = u(x - h_x, t);
  const double up2 = u(x + 2.0 * h_x, t);
  const double um2 = u(x - 2.0 * h_x, t);
  const double ut = (u(x, t + h_t) - u(x, t - h_t)) / (2.0 * h_t);
  const double ux = (up1 - um1) / (2.0 * h_x);
  const double uxxx = (up2 - 2.0 * up1 + 2.0 * um1 - um2) / (2.0 * h_x * h_x * h_x);
  return std::abs(4.0 * ut - uxxx + 6.0 * u0 * ux);
}

namespace {

struct FieldJet {
  Complex u;
  Complex ux;
  Complex uxx;
};

FieldJet jet(const LaxPairField& field, double x, double t, double h) {
  const Complex u0 = field.u(x, t);
  const Complex up = field.u(x + h, t);
  const Complex um = field.u(x - h, t);
  return {u0, (up - um) / (2.0 * h), (up - 2.0 * u0 + um) / (h * h)};
}

Matrix two_by_two(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

Matrix lax_x_matrix(const LaxPairField& field, double x, double t, Complex z, double h) {
  (void)h;
  const Complex u = field.u(x, t);
  const Complex i(0.0, 1.0);
  switch (field.kind) {
    case LaxKind::kdv:
      return two_by_two(u, z, z, -u);
    case LaxKind::kdv_schrodinger:
      return two_by_two(0.0, 1.0, u - z * z, 0.0);
    case LaxKind::nls:
      return two_by_two(-i * z, u, -std::conj(u), i * z);
  }
  return {};
}

Matrix lax_t_matrix(const LaxPairField& field, double x, double t, Complex z, double h) {
  const FieldJet f = jet(field, x, t, h);
  const Complex i(0.0, 1.0);
  switch (field.kind) {
    case LaxKind::kdv: {
      const Complex v = f.u;
      const Complex alpha = 0.25 * f.uxx - 0.5 * v * v * v;
      const Complex beta = -0.5 * (f.ux + v * v);
      const Complex gamma = 0.5 * (f.ux - v * v);
      const Complex delta = v;
      const Complex z2 = z * z;
      const Complex z3 = z2 * z;
      return two_by_two(alpha + delta * z2, beta * z + z3, gamma * z + z3, -alpha - delta * z2);
    }
    case LaxKind::kdv_schrodinger: {
      const Complex u = f.u;
      const Complex k2 = z * z;
      const Complex k3 = k2 * z;
      return -0.25 * two_by_two(4.0 * i * k3 - f.ux, 2.0 * u + 4.0 * k2,
                                2.0 * (u + 2.0 * k2) * (u - k2) - f.uxx, 4.0 * i * k3 + f.ux);
    }
    case LaxKind::nls: {
      const Complex u = f.u;
      const Complex mod2 = std::norm(u);
      const Complex z2 = z * z;
      return two_by_two(-i * mod2 + 2.0 * i * z2, -i * f.ux - 2.0 * u * z,
                        -i * std::conj(f.ux) + 2.0 * std::conj(u) * z, i * mod2 - 2.0 * i * z2);
    }
  }
  return {};
}

double zero_curvature_residual(const LaxPairField& field, double x, double t, Complex z, double h) {
  if (!(h > 0.0)) throw InvalidArgument("zero_curvature_residual: step must be positive");
  const Matrix dv_dt =
      (lax_x_matrix(field, x, t + h, z, h) - lax_x_matrix(field, x, t - h, z, h)) / (2.0 * h);
  const Matrix dz_dx =
      (lax_t_matrix(field, x + h, t, z, h) - lax_t_matrix(field, x - h, t, z, h)) / (2.0 * h);
  const Matrix v = lax_x_matrix(field, x, t, z, h);
  const Matrix zt = lax_t_matrix(field, x, t, z, h);
  return (dv_dt - dz_dx + v * zt - zt * v).norm();
}

Complex integrable_kernel(const SpinorSample& psi_kappa, const SpinorSample& psi_k, double kappa,
                          double k) {
  if (kappa == k) throw InvalidArgument("integrable_kernel: kappa and k must differ");
  // J Psi = (-Psi_2, Psi_1)
  const Complex num = -psi_kappa[1] * psi_k[0] + psi_kappa[0] * psi_k[1];
  return num / (Complex(0.0, 1.0) * (kappa - k));
}

Matrix derivative_kernel_matrix(const std::vector<double>& k_grid,
                                const std::vector<SpinorSample>& psi, KernelDerivative which,
                                const CubicCoefficients& coeffs) {
  if (k_grid.size() < 4) throw InvalidArgument("derivative_kernel_rank: need at least 4 grid points");
  if (psi.size() != k_grid.size()) throw InvalidArgument("derivative_kernel_rank: size mismatch");
  const Index n = static_cast<Index>(k_grid.size());
  const Complex i(0.0, 1.0);
  Matrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    const double kappa = k_grid[static_cast<std::size_t>(r)];
    const SpinorSample& pk = psi[static_cast<std::size_t>(r)];
    for (Index c = 0; c < n; ++c) {
      const double k = k_grid[static_cast<std::size_t>(c)];
      const SpinorSample& p = psi[static_cast<std::size_t>(c)];
      Complex m00, m01, m10, m11;
      if (which == KernelDerivative::x) {
        m00 = 1.0;
        m01 = 0.0;
        m10 = 0.0;
        m11 = -1.0;
      } else {
        const double quad = k * k + k * kappa + kappa * kappa;
        m00 = -coeffs.gamma + quad;
        m01 = i * coeffs.delta * (k + kappa);
        m10 = m01;
        m11 = coeffs.beta - quad;
      }
      // <M Psi(kappa), Psi(k)>
      const Complex a0 = m00 * pk[0] + m01 * pk[1];
      const Complex a1 = m10 * pk[0] + m11 * pk[1];
      out(r, c) = a0 * p[0] + a1 * p[1];
    }
  }
  return out;
}

std::size_t derivative_kernel_rank(const std::vector<double>& k_grid,
                                   const std::vector<SpinorSample>& psi, KernelDerivative which,
                                   const CubicCoefficients& coeffs, double svd_threshold) {
  const Matrix m = derivative_kernel_matrix(k_grid, psi, which, coeffs);
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Index j = 0; j < s.size(); ++j) {
    if (s(j) > svd_threshold * s(0)) ++rank;
  }
  return rank;
}

}  // namespace detfield
