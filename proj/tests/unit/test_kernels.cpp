#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/airy.hpp>

#include "detfield/errors.hpp"
#include "detfield/kernels.hpp"
#include "detfield/quadrature.hpp"

using namespace detfield;

TEST_CASE("Airy function at the origin") {
  CHECK(airy(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-15));
  CHECK(airy_prime(0.0) == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("Airy function against Boost") {
  double worst = 0.0;
  double worst_prime = 0.0;
  for (double x = -20.0; x <= 20.0; x += 0.0625) {
    worst = std::max(worst, std::abs(airy(x) - boost::math::airy_ai(x)));
    worst_prime = std::max(worst_prime, std::abs(airy_prime(x) - boost::math::airy_ai_prime(x)) / std::max(1.0, std::sqrt(std::abs(x))));
  }
  CHECK(worst < 1e-12);
  CHECK(worst_prime < 1e-12);
}

TEST_CASE("Airy differential equation") {
  const double x = 1.3;
  const double h = 1e-3;
  const double second = (airy(x + h) - 2.0 * airy(x) + airy(x - h)) / (h * h);
  CHECK(std::abs(second - x * airy(x)) < 1e-8);
  const double dp = (airy_prime(x + h) - airy_prime(x - h)) / (2.0 * h);
  CHECK(std::abs(dp - x * airy(x)) < 1e-7);
}

TEST_CASE("Airy asymptotics") {
  const double x = 10.0;
  const double lead = std::exp(-2.0 / 3.0 * std::pow(x, 1.5)) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
  CHECK(std::abs(airy(x) / lead - 1.0) < 0.01);
  CHECK_THROWS_AS(airy(-201.0), InvalidArgument);
}

TEST_CASE("Airy kernel") {
  CHECK(airy_kernel(0.3, 1.7) == doctest::Approx(airy_kernel(1.7, 0.3)).epsilon(1e-14));
  const double diag = airy_kernel(0.8, 0.8);
  CHECK(std::abs(airy_kernel(0.8, 0.8 + 5e-7) - diag) < 1e-6);
  CHECK(diag == doctest::Approx(std::pow(airy_prime(0.8), 2) - 0.8 * std::pow(airy(0.8), 2)).epsilon(1e-15));
  CHECK(airy_kernel(0.4, 1.1, 0.5) == doctest::Approx(airy_kernel(-0.1, 0.6)).epsilon(1e-14));
}

TEST_CASE("Airy kernel as a Hankel square") {
  for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}, std::pair{0.0, 1.0}, std::pair{-2.0, 1.5}}) {
    const auto [k, q] = airy_square_check(x, y);
    CHECK(std::abs(k - q) < 1e-8);
  }
  const auto [k1, q1] = airy_square_check(0.5, 1.5, 0.7);
  const auto [k0, q0] = airy_square_check(-0.2, 0.8);
  CHECK(std::abs(k1 - k0) < 1e-14);
  CHECK(std::abs(q1 - q0) < 1e-9);
}

TEST_CASE("sine kernel") {
  CHECK(sine_kernel(0.4, 0.4) == doctest::Approx(1.0 / std::numbers::pi));
  CHECK(sine_kernel(0.2, 1.9) == doctest::Approx(sine_kernel(1.9, 0.2)));
  CHECK(sine_kernel(0.0, std::numbers::pi) == doctest::Approx(0.0));
}

TEST_CASE("Hamiltonian kernel of the Airy system") {
  const HamiltonianKernel hk = airy_hamiltonian_kernel();
  for (double x : {-1.0, 0.0, 0.7})
    for (double y : {-0.5, 0.3, 2.0}) CHECK(std::abs(hamiltonian_kernel(hk, x, y) - airy_kernel(x, y)) < 1e-8);
  CHECK(std::isfinite(hamiltonian_kernel(hk, 0.5, 0.5)));
  CHECK(std::abs(hamiltonian_kernel(hk, 0.5, 0.5) - airy_kernel(0.5, 0.5)) < 1e-8);

  const HamiltonianKernel shifted = airy_hamiltonian_kernel(0.6);
  CHECK(std::abs(hamiltonian_kernel(shifted, 0.1, 0.9) - airy_kernel(0.1, 0.9, 0.6)) < 1e-8);
}

TEST_CASE("Hamiltonian kernel of a constant null pairing") {
  HamiltonianKernel hk;
  hk.psi = [](double) {
    RealVector v(2);
    v << 1.0, 0.0;
    return v;
  };
  hk.e = [](double) { return RealMatrix(RealMatrix::Zero(2, 2)); };
  hk.f = [](double) { return RealMatrix(RealMatrix::Zero(2, 2)); };
  for (double x : {0.0, 1.0})
    for (double y : {0.5, 1.0}) CHECK(hamiltonian_kernel(hk, x, y) == 0.0);
}

TEST_CASE("Mercer traces") {
  const QuadratureRule rule = semi_infinite_rule(200, 0.0, 1.0);
  auto [sum, integral] = mercer_trace([](double s, double t) { return std::exp(-s - t); }, rule);
  CHECK(sum == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(integral == doctest::Approx(0.5).epsilon(1e-10));

  std::tie(sum, integral) = mercer_trace([](double s, double t) { return airy_kernel(s, t); }, 0.0, 14.0, 120);
  CHECK(std::abs(sum - integral) < 1e-6);

  std::tie(sum, integral) = mercer_trace(sine_kernel, 0.0, 1.0, 60);
  CHECK(std::abs(sum - integral) < 1e-6);
  CHECK(integral == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));

  CHECK_THROWS_AS(mercer_trace([](double s, double t) { return -std::exp(-s - t); }, 0.0, 1.0, 20),
                  HypothesisViolation);
}

TEST_CASE("Tracy-Widom gap probability") {
  CHECK(std::abs(tw_gap(6.0) - 1.0) < 1e-6);
  double prev = 0.0;
  for (double s = -6.0; s <= 4.0; s += 0.5) {
    const double f = tw_gap(s);
    CHECK(f >= prev);
    CHECK(f <= 1.0);
    prev = f;
  }
  CHECK(std::abs(tw_gap_direct(-2.0, 120) - tw_gap_direct(-2.0, 240)) < 1e-8);
  CHECK(std::abs(tw_gap_direct(-2.0, 240) - tw_gap_hankel(-2.0, 240)) < 1e-8);
  CHECK_THROWS_AS(tw_gap(-9.0), InvalidArgument);
  CHECK_THROWS_AS(tw_gap(0.0, 50), InvalidArgument);
}
