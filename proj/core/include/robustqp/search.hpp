#pragma once

// Deterministic certificate search. The optimality searches sweep the
// uncertainty rectangle on a uniform grid (endpoints included, mu coupled by
// mu_alpha + mu_beta = mu1 + mu2), solve the stationarity system for the
// multipliers per cell, and keep the verified certificate with the smallest
// worst residual. The alternative decision tries to sample a strict witness
// first and falls back to a multiplier search over the same grids.

#include <cstdint>
#include <optional>

#include "robustqp/certificates.hpp"
#include "robustqp/quadratic.hpp"

namespace robustqp {

struct SearchBudget {
  int mu_grid = 101;
  int delta_grid = 101;
  int sample_count = 100000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double box_halfwidth = 10.0;  // sampling box for witness search
};

// Empty result means NOT_FOUND: the grid was exhausted without a certificate
// passing the verifier at budget.tol. The grid may simply miss off-grid
// parameters; NOT_FOUND is not a proof of non-optimality.
std::optional<OptimalityCertificate> search_optimality_certificate(
    const RobustInstance& instance, const Vector& xbar, const SearchBudget& budget);

std::optional<OneSidedCertificate> search_one_sided_certificate(
    const RobustInstance& instance, const Vector& xbar, const SearchBudget& budget);

enum class AlternativeOutcome {
  branch_a,      // strict witness found: f + gamma < 0 somewhere strictly inside the band
  branch_b,      // multipliers found: the aggregate is globally nonnegative
  inconclusive,  // budgets exhausted; never a claim that neither branch holds
};

struct AlternativeDecision {
  AlternativeOutcome outcome = AlternativeOutcome::inconclusive;
  std::optional<WitnessPoint> witness;
  std::optional<AlternativeMultipliers> multipliers;
};

AlternativeDecision decide_alternative(const RobustInstance& instance, double gamma,
                                       const SearchBudget& budget);

}  // namespace robustqp
