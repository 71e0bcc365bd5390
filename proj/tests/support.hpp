#pragma once

// Shared instance builders for the test suites.

#include <cmath>
#include <cstddef>
#include <optional>

#include "robustqp/quadratic.hpp"

namespace testsupport {

// min 1/2 x'x + 1'x subject to x'(1+mu)x + (1+delta)1'x <= 1 for all
// mu, delta in [-1,1]. Optimal at xbar = -1/sqrt(2n) * 1.
inline robustqp::RobustInstance band_instance(std::size_t n) {
  const int dim = static_cast<int>(n);
  robustqp::RobustInstance inst;
  inst.objective.Q = robustqp::SymmetricMatrix::identity(dim);
  inst.objective.c.assign(n, 1.0);
  inst.objective.r = 0.0;
  inst.constraint.B1 = robustqp::SymmetricMatrix::identity(dim).scaled(2.0);
  inst.constraint.B2 = inst.constraint.B1;
  inst.constraint.b1.assign(n, 1.0);
  inst.constraint.b2.assign(n, 1.0);
  inst.constraint.mu = {-1.0, 1.0};
  inst.constraint.delta = {-1.0, 1.0};
  inst.constraint.alpha = std::nullopt;
  inst.constraint.beta = 1.0;
  return inst;
}

inline robustqp::Vector band_minimizer(std::size_t n) {
  return robustqp::Vector(n, -1.0 / std::sqrt(2.0 * static_cast<double>(n)));
}

// Shift that makes the optimal value zero: gamma = -f(xbar).
inline double band_gamma(std::size_t n) {
  return std::sqrt(static_cast<double>(n) / 2.0) - 0.25;
}

inline double band_multiplier(std::size_t n) {
  return (std::sqrt(2.0 * static_cast<double>(n)) - 1.0) / 4.0;
}

// One-variable instance: objective 1/2 A x^2 + a x, band on B1/2 x^2 + b1 x
// with optional scaled parts. Uncertainty box is [-1,1]^2 throughout.
inline robustqp::RobustInstance scalar_instance(double A, double a, double B1, double b1,
                                                std::optional<double> alpha, double beta,
                                                double B2 = 0.0, double b2 = 0.0) {
  robustqp::RobustInstance inst;
  inst.objective.Q = robustqp::SymmetricMatrix(1);
  inst.objective.Q.set(0, 0, A);
  inst.objective.c = {a};
  inst.objective.r = 0.0;
  inst.constraint.B1 = robustqp::SymmetricMatrix(1);
  inst.constraint.B1.set(0, 0, B1);
  inst.constraint.B2 = robustqp::SymmetricMatrix(1);
  inst.constraint.B2.set(0, 0, B2);
  inst.constraint.b1 = {b1};
  inst.constraint.b2 = {b2};
  inst.constraint.mu = {-1.0, 1.0};
  inst.constraint.delta = {-1.0, 1.0};
  inst.constraint.alpha = alpha;
  inst.constraint.beta = beta;
  return inst;
}

}  // namespace testsupport
