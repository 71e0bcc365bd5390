#pragma once

// Certificate types for robust optimality and the robust alternative, with
// exact residual-based verification. A certificate never proves anything by
// itself: the verifiers recompute stationarity, complementarity, curvature,
// and aggregate nonnegativity from scratch against a caller tolerance.

#include <utility>
#include <variant>

#include "robustqp/quadratic.hpp"

namespace robustqp {

// Two-sided band: multipliers lambda1 (upper bound) and lambda2 (lower
// bound), each with its own realization of the uncertain parameters. The mu
// realizations are coupled: mu_alpha + mu_beta = mu1 + mu2.
struct OptimalityCertificate {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mu_alpha = 0.0;
  double mu_beta = 0.0;
  double delta_alpha = 0.0;
  double delta_beta = 0.0;
};

// One-sided band (no lower bound): a single multiplier and realization.
struct OneSidedCertificate {
  double lambda = 0.0;
  double mu = 0.0;
  double delta = 0.0;
};

struct WitnessPoint {
  Vector x;
};

// lambda0 is normalized to exactly 0 or 1.
struct AlternativeMultipliers {
  double lambda0 = 1.0;
  OptimalityCertificate inner;
};

using AlternativeCertificate = std::variant<WitnessPoint, AlternativeMultipliers>;

struct VerificationReport {
  double stationarity_residual = 0.0;
  double complementarity_beta = 0.0;   // lambda1 * (g_beta(xbar) - beta)
  double complementarity_alpha = 0.0;  // lambda2 * (alpha - g_alpha(xbar))
  double min_eigenvalue = 0.0;         // of the curvature / aggregate matrix
  double upper_margin = 0.0;           // beta - g_max at the checked point
  double lower_margin = 0.0;           // g_min - alpha (infinite when one-sided)
  double objective_margin = 0.0;       // witness: -(f + gamma); multipliers: aggregate infimum
  bool passed = false;
  double tolerance = 0.0;
};

// lambda0*(f + gamma) + lambda1*(g_beta - beta) + lambda2*(alpha - g_alpha),
// assembled coefficient-wise. Requires a finite alpha when lambda2 > 0.
QuadraticFunction aggregate_quadratic(const RobustInstance& instance, double gamma,
                                      double lambda0, const OptimalityCertificate& cert);

// q(x) >= 0 for all x, tested exactly: PSD curvature, linear term inside
// range(Q), and infimum >= -1e-9 * (1 + |r|).
bool global_nonneg(const QuadraticFunction& q);

VerificationReport verify_optimality_certificate(const RobustInstance& instance,
                                                 const Vector& xbar,
                                                 const OptimalityCertificate& cert, double tol);

VerificationReport verify_one_sided_certificate(const RobustInstance& instance,
                                                const Vector& xbar,
                                                const OneSidedCertificate& cert, double tol);

VerificationReport verify_alternative_certificate(const RobustInstance& instance, double gamma,
                                                  const AlternativeCertificate& cert,
                                                  double tol);

// Strict interior of the band at x0, by at least `margin` on each finite side.
bool check_slater(const RobustInstance& instance, const Vector& x0, double margin);

}  // namespace robustqp
