#pragma once

#include <string>
#include <vector>

#include "screenbem/types.hpp"

namespace screenbem {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The property suite behind the `verify` subcommand: kernel symmetry,
/// Helmholtz finite-difference check, quadrature exactness and convergence,
/// matrix complex-symmetry, solver residual, linearity, threshold
/// monotonicity, translation covariance, determinism.
std::vector<CheckResult> run_property_suite(std::uint64_t seed);

}  // namespace screenbem
