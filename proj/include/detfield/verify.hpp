#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detfield/realization.hpp"

namespace detfield {

struct VerifyRow {
  std::string name;
  bool passed = false;
  double error = 0.0;      // worst measured discrepancy
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_passed() const;
};

/// Random test systems, deterministic in seed. Even indices are self-adjoint
/// bound-state realizations, odd indices general complex systems
/// A = S diag(kappa) S^{-1}; dimensions cycle through 1..6.
std::vector<StateSpaceSystem> random_fixtures(std::size_t count, std::uint64_t seed);

/// Shift d minimizing sup_x |f(x) - g(x - d)| over a grid on [lo, hi], found
/// by Brent's method started from the offset between the minima of f and g.
double fit_translation(const std::function<double(double)>& f,
                       const std::function<double(double)>& g, double lo, double hi);

/// Runs every cross-identity check on built-in fixtures.
VerifyReport run_verification();

}  // namespace detfield
