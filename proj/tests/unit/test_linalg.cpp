#include <doctest.h>

#include <cmath>
#include <numbers>

#include "detfield/errors.hpp"
#include "detfield/linalg.hpp"
#include "detfield/quadrature.hpp"
#include "oracles.hpp"

using namespace detfield;

namespace {

Matrix random_matrix(Index n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

TEST_CASE("matrix exponential of the identity") {
  const Matrix e = matrix_exponential(Matrix::Identity(3, 3), 1.0);
  CHECK((e - std::exp(-1.0) * Matrix::Identity(3, 3)).norm() < 1e-15);
}

TEST_CASE("matrix exponential of a diagonal matrix") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  const Matrix e = matrix_exponential(m, std::log(2.0));
  CHECK(std::abs(e(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(e(1, 1) - 0.25) < 1e-15);
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("matrix exponential matches a Taylor series") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix m = random_matrix(4, seed);
    const Matrix ref = oracle::taylor_exp(m, 0.3);
    CHECK((matrix_exponential(m, 0.3) - ref).norm() < 1e-12 * ref.norm());
    CHECK((matrix_exponential_pade(m, 0.3) - ref).norm() < 1e-12 * ref.norm());
  }
}

TEST_CASE("defective matrix goes through the Pade path") {
  Matrix j(2, 2);
  j << 1.0, 1.0, 0.0, 1.0;
  const double t = 0.7;
  const Matrix e = matrix_exponential(j, t);
  CHECK(std::abs(e(0, 0) - std::exp(-t)) < 1e-14);
  CHECK(std::abs(e(0, 1) + t * std::exp(-t)) < 1e-14);
  CHECK(std::abs(e(1, 0)) < 1e-14);
}

TEST_CASE("matrix exponential rejects non-finite input") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = std::nan("");
  CHECK_THROWS_AS(matrix_exponential(m, 1.0), InvalidArgument);
}

TEST_CASE("Bartels-Stewart solves the Sylvester equation") {
  Matrix a = random_matrix(5, 11) + 6.0 * Matrix::Identity(5, 5);
  Matrix b = random_matrix(5, 12) + 6.0 * Matrix::Identity(5, 5);
  const Matrix c = random_matrix(5, 13);
  const Matrix x = solve_sylvester(a, b, c);
  CHECK((a * x + x * b - c).norm() < 1e-12 * c.norm());
}

TEST_CASE("Sylvester equation with a shared spectrum is singular") {
  const Matrix a = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(solve_sylvester(a, -a, Matrix::Identity(2, 2)), SingularMatrix);
}

TEST_CASE("norms, condition numbers and Hermitian helpers") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 0.5;
  CHECK(operator_norm(m) == doctest::Approx(3.0));
  CHECK(condition_number(m) == doctest::Approx(6.0));
  CHECK(std::isinf(condition_number(Matrix::Zero(2, 2))));

  const Matrix g = random_matrix(4, 21);
  CHECK(hermitian_defect(hermitian_part(g)) < 1e-15);
  const Matrix p = g * g.adjoint();
  const Matrix r = psd_sqrt(p);
  CHECK((r * r - p).norm() < 1e-12 * p.norm());
  const RealVector ev = hermitian_eigenvalues(p);
  for (Index i = 1; i < ev.size(); ++i) CHECK(ev(i) >= ev(i - 1));
  CHECK(all_finite(p));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const QuadratureRule rule = gauss_legendre(10, -1.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double exact = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    CHECK(rule.integrate([k](double t) { return std::pow(t, k); }) == doctest::Approx(exact).epsilon(1e-13));
  }
  const QuadratureRule big = gauss_legendre(401);
  double total = 0.0;
  for (double w : big.weights) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  for (std::size_t i = 1; i < big.size(); ++i) CHECK(big.nodes[i] > big.nodes[i - 1]);
  CHECK(big.nodes[200] == 0.0);
}

TEST_CASE("Gauss-Legendre matches Golub-Welsch nodes") {
  const QuadratureRule rule = gauss_legendre(40, 0.0, 3.0);
  const auto [x, w] = oracle::legendre_rule(40, 0.0, 3.0);
  for (int i = 0; i < 40; ++i) {
    CHECK(std::abs(rule.nodes[static_cast<std::size_t>(i)] - x(i)) < 1e-13);
    CHECK(std::abs(rule.weights[static_cast<std::size_t>(i)] - w(i)) < 1e-13);
  }
}

TEST_CASE("Gauss-Laguerre with folded weights") {
  const QuadratureRule rule = gauss_laguerre(60);
  double factorial = 1.0;
  for (int k = 0; k < 12; ++k) {
    if (k > 0) factorial *= k;
    const double v = rule.integrate([k](double t) { return std::pow(t, k) * std::exp(-t); });
    CHECK(v == doctest::Approx(factorial).epsilon(1e-11));
  }
  CHECK(rule.integrate([](double t) { return std::exp(-2.0 * t); }) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("semi-infinite mapped rule") {
  const QuadratureRule rule = semi_infinite_rule(200, 1.0, 2.0);
  CHECK(rule.integrate([](double t) { return std::exp(-t); }) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(rule.integrate([](double t) { return 1.0 / (t * t); }) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(semi_infinite_rule(10, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("quadrature argument checks") {
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);
  CHECK_THROWS_AS(gauss_legendre(5, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(gauss_laguerre(0), InvalidArgument);
}
