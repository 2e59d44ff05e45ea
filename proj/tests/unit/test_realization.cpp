#include <doctest.h>

#include <cmath>

#include "detfield/errors.hpp"
#include "detfield/realization.hpp"
#include "oracles.hpp"

using namespace detfield;

namespace {

StateSpaceSystem single(double kappa = 1.0, double c = 1.0) {
  return realize_from_bound_states(ScatteringData({{kappa, c}}));
}

}  // namespace

TEST_CASE("single bound state realization") {
  const StateSpaceSystem sys = single();
  CHECK(sys.dim() == 1);
  CHECK(sys.a()(0, 0) == Complex(1.0));
  CHECK(sys.b()(0, 0) == Complex(1.0));
  CHECK(sys.c()(0, 0) == Complex(1.0));
  for (double x : {0.0, 0.3, 2.0}) CHECK(std::abs(phi(sys, x) - std::exp(-x)) < 1e-15);
  CHECK(sys.is_self_adjoint());
}

TEST_CASE("two bound states sum at the origin") {
  const StateSpaceSystem sys = realize_from_bound_states(ScatteringData({{1.0, 1.0}, {2.0, 1.0}}));
  CHECK(std::abs(phi(sys, 0.0) - 2.0) < 1e-15);
}

TEST_CASE("soliton data gives a doubled exponential") {
  const StateSpaceSystem sys = single(1.0, std::sqrt(2.0));
  for (double x : {0.0, 0.5, 3.0}) CHECK(std::abs(phi(sys, x) - 2.0 * std::exp(-x)) < 1e-14);
}

TEST_CASE("impulse response values") {
  CHECK(std::abs(phi(single(), 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(phi(single(), std::log(2.0)) - 0.5) < 1e-15);
  const ScatteringData data = oracle::random_bound_states(3, 5);
  const StateSpaceSystem sys = realize_from_bound_states(data);
  const Complex ref = oracle::sum_of_terms(data.bound_states(), 0.7);
  CHECK(std::abs(phi(sys, 0.7) - ref) < 1e-14 * std::abs(ref));
}

TEST_CASE("impulse response of a general system matches the exponential") {
  const StateSpaceSystem sys = oracle::random_system(4, 9);
  for (double t : {0.0, 0.4, 1.5}) {
    const Complex ref = oracle::impulse(sys, t);
    CHECK(std::abs(phi(sys, t) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
  }
  CHECK(std::abs(sys.impulse(-0.5) - oracle::impulse(sys, -0.5)) < 1e-12);
  CHECK_THROWS_AS(phi(sys, -0.1), InvalidArgument);
}

TEST_CASE("shift examples") {
  const StateSpaceSystem sys = oracle::random_system(3, 4);
  const StateSpaceSystem same = shift(sys, 0.0);
  CHECK((same.b() - sys.b()).norm() < 1e-15);
  CHECK((same.c() - sys.c()).norm() < 1e-15);

  const StateSpaceSystem s = shift(single(), 0.5);
  for (double t : {0.0, 0.2, 1.0}) CHECK(std::abs(phi(s, t) - std::exp(-1.0 - t)) < 1e-15);

  const StateSpaceSystem twice = shift(shift(sys, 0.3), 0.4);
  const StateSpaceSystem once = shift(sys, 0.7);
  CHECK((twice.b() - once.b()).norm() < 1e-13);
  CHECK((twice.c() - once.c()).norm() < 1e-13);
  for (double t : {0.0, 0.5}) CHECK(std::abs(phi(once, t) - phi(sys, 1.4 + t)) < 1e-13);
}

TEST_CASE("transfer function examples") {
  CHECK(std::abs(transfer(single(), 1.0) - 0.5) < 1e-15);
  const StateSpaceSystem two = realize_from_bound_states(ScatteringData({{1.0, 1.0}, {2.0, 1.0}}));
  CHECK(std::abs(transfer(two, 0.0) - 1.5) < 1e-15);
  CHECK_THROWS_AS(transfer(single(), -1.0), SingularMatrix);
}

TEST_CASE("transfer function is the Laplace transform of the impulse response") {
  const StateSpaceSystem sys = oracle::random_system(3, 17);
  for (double lam : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const Complex ref = oracle::integrate_to_infinity(
        [&](double t) { return std::exp(-lam * t) * oracle::impulse(sys, t); }, 0.0);
    CHECK(std::abs(transfer(sys, lam) - ref) < 1e-8);
  }
}

TEST_CASE("hypothesis report") {
  HypothesisReport r = validate_hypotheses(single());
  CHECK(r.norm_Q0 == doctest::Approx(0.5));
  CHECK(r.ok);
  r = validate_hypotheses(single(1.0, std::sqrt(2.0)));
  CHECK(r.norm_Q0 == doctest::Approx(1.0));
  CHECK_FALSE(r.ok);
  r = validate_hypotheses(single(1.0, 2.0));
  CHECK(r.norm_Q0 == doctest::Approx(2.0));
  CHECK_FALSE(r.ok);
  CHECK(r.traceclass_bound == doctest::Approx(4.0));
}

TEST_CASE("scattering data validation") {
  CHECK_NOTHROW(ScatteringData(std::vector<BoundState>{}));
  CHECK_THROWS_AS(ScatteringData({{1.0, 1.0}, {1.0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(ScatteringData({{-1.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(ScatteringData({{1.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(ScatteringData({{std::nan(""), 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(realize_from_bound_states(ScatteringData()), InvalidArgument);
}

TEST_CASE("state space system validation") {
  const Matrix one = Matrix::Ones(1, 1);
  CHECK_THROWS_AS(StateSpaceSystem(-one, one, one), InvalidArgument);
  CHECK_THROWS_AS(StateSpaceSystem(Matrix::Identity(2, 2), one, one), InvalidArgument);
  CHECK_THROWS_AS(StateSpaceSystem(Matrix::Identity(3, 3), Matrix::Ones(3, 1), Matrix::Ones(1, 3), 2),
                  InvalidArgument);
  Matrix bad = one;
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(StateSpaceSystem(bad, one, one), InvalidArgument);
}

TEST_CASE("eigenbasis data") {
  const StateSpaceSystem sys = oracle::random_system(4, 23);
  const Matrix& v = sys.eigenvectors();
  const Matrix recon = v * sys.eigenvalues().asDiagonal() * sys.eigenvectors_inverse();
  CHECK((recon - sys.a()).norm() < 1e-12 * sys.a().norm());
  CHECK(sys.has_stable_eigenbasis());
  CHECK(sys.min_decay_rate() > 0.5);
  CHECK((sys.propagator(0.4) - oracle::expm(sys.a(), 0.4)).norm() < 1e-12);
}
