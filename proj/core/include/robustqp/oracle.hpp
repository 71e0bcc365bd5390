#pragma once

// Brute-force ground truth for desk-scale instances: a feasibility-filtered
// grid/random sweep with deterministic refinement. Slow by design; everything
// else in the library is validated against this.

#include <cstdint>
#include <optional>

#include "robustqp/quadratic.hpp"

namespace robustqp {

struct OracleResult {
  std::optional<Vector> best_x;       // robust feasible (within 1e-12) when found
  std::optional<double> best_value;   // f(best_x)
  long long samples_evaluated = 0;    // candidate points examined, refinement included
  bool feasible_found = false;
};

// Evaluates f on every robust-feasible point of a uniform grid over
// [-box, box]^n (skipped when grid_per_dim^n would exceed 1e7) plus
// random_extra seeded samples, then refines the incumbent by coordinate
// descent and a shrinking resampling box. Ties pick the lexicographically
// smallest point.
OracleResult brute_force_min(const RobustInstance& instance, double box_halfwidth,
                             int grid_per_dim, int random_extra, std::uint64_t seed);

struct ImplicationCheck {
  bool violated = false;
  std::optional<Vector> witness;      // first feasible sample with f + gamma < -1e-9
  long long feasible_samples = 0;
  bool vacuous = false;               // no feasible sample seen at all
};

// Empirical test of "robust feasible implies f + gamma >= 0" by seeded
// sampling in [-box, box]^n.
ImplicationCheck sample_implication_check(const RobustInstance& instance, double gamma,
                                          int samples, std::uint64_t seed,
                                          double box_halfwidth = 10.0);

}  // namespace robustqp
