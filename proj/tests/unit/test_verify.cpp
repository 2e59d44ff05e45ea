#include <doctest.h>

#include <cmath>

#include "detfield/verify.hpp"

using namespace detfield;

TEST_CASE("random fixtures are deterministic and mixed") {
  const auto a = random_fixtures(8, 99);
  const auto b = random_fixtures(8, 99);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].dim() == static_cast<Index>(i % 6) + 1);
    CHECK((a[i].a() - b[i].a()).norm() == 0.0);
    CHECK(a[i].is_self_adjoint() == (i % 2 == 0));
  }
}

TEST_CASE("translation fit recovers a known shift") {
  auto g = [](double x) { return -1.0 / std::pow(std::cosh(x), 2); };
  auto f = [&](double x) { return g(x - 0.37); };
  CHECK(fit_translation(f, g, -5.0, 5.0) == doctest::Approx(0.37).epsilon(1e-8));
}

TEST_CASE("verification report passes") {
  const VerifyReport report = run_verification();
  CHECK(report.rows.size() >= 12);
  for (const VerifyRow& row : report.rows) {
    INFO(row.name << ": " << row.error << " > " << row.tolerance << " " << row.detail);
    CHECK(row.passed);
  }
  CHECK(report.all_passed());
}
