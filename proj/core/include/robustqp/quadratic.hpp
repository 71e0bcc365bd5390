#pragma once

// Instance data model for a quadratic program with one interval-uncertain
// band constraint:
//
//   minimize  f(x) = x'Ax/2 + a'x
//   s.t.      alpha <= x'(B1 + mu B2)x/2 + (b1 + delta b2)'x <= beta
//             for every (mu, delta) in [mu1, mu2] x [delta1, delta2].
//
// The band value is affine in (mu, delta), so its extrema over the rectangle
// sit at the four corners; robust feasibility reduces to corner checks.

#include <array>
#include <optional>
#include <utility>

#include "robustqp/linalg.hpp"

namespace robustqp {

struct QuadraticFunction {
  SymmetricMatrix Q;
  Vector c;
  double r = 0.0;

  int dim() const { return Q.size(); }
  double eval(const Vector& x) const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct UncertainConstraint {
  SymmetricMatrix B1, B2;
  Vector b1, b2;
  Interval mu, delta;
  std::optional<double> alpha;  // empty means unbounded below
  double beta = 0.0;

  int dim() const { return B1.size(); }
  bool one_sided() const { return !alpha.has_value(); }
};

struct RobustInstance {
  QuadraticFunction objective;
  UncertainConstraint constraint;

  int n() const { return objective.dim(); }
  // Throws std::invalid_argument on dimension mismatch, reversed intervals,
  // non-finite bounds, or alpha >= beta.
  void validate() const;
};

// Rectangle corners in a fixed enumeration order.
enum class Corner { mu1_delta1 = 0, mu1_delta2 = 1, mu2_delta1 = 2, mu2_delta2 = 3 };

inline constexpr std::array<Corner, 4> all_corners = {
    Corner::mu1_delta1, Corner::mu1_delta2, Corner::mu2_delta1, Corner::mu2_delta2};

std::pair<double, double> corner_params(const UncertainConstraint& con, Corner corner);

// g(.; mu, delta) with Q = B1 + mu B2, c = b1 + delta b2, r = 0.
// Throws when (mu, delta) is outside the rectangle.
QuadraticFunction constraint_at(const UncertainConstraint& con, double mu, double delta);

// Band values at the four corners, in Corner order.
std::array<double, 4> corner_values(const UncertainConstraint& con, const Vector& x);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// (min, max) of the band value over the whole rectangle = over the corners.
Range robust_range(const UncertainConstraint& con, const Vector& x);

struct FeasibilityReport {
  bool feasible = false;
  // beta - g_max and g_min - alpha; the lower margin is +infinity for
  // one-sided constraints.
  double upper_margin = 0.0;
  double lower_margin = 0.0;
};

FeasibilityReport is_robust_feasible(const RobustInstance& instance, const Vector& x, double tol);

}  // namespace robustqp
