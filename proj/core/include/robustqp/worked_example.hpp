#pragma once

// The n-dimensional ball-band reference family (n >= 5): objective
// 1/2 x'x + s'x with s = (1,...,1), band x'(1+mu)x + (1+delta)s'x <= 1 over
// mu, delta in [-1,1]. Everything about it is known in closed form, which
// makes it the standing end-to-end fixture: the optimum sits on the band
// boundary at the (mu, delta) = (1, -1) corner, and the homogenized system
// that a naive pencil argument would declare infeasible has an explicit
// solution at (-s, 1).

#include "robustqp/certificates.hpp"
#include "robustqp/convexity.hpp"
#include "robustqp/quadratic.hpp"

namespace robustqp {

struct WorkedExample {
  RobustInstance instance;
  Vector xbar;                     // -(1/sqrt(2n)) s, the unique minimizer
  double gamma = 0.0;              // -f(xbar) = sqrt(n/2) - 1/4
  OneSidedCertificate expected_cert;  // ((sqrt(2n)-1)/4, 1, -1)
  int n = 0;
};

// Throws for n <= 4; the closed forms below depend on n >= 5.
WorkedExample build_worked_example(int n);

struct GapWitnessValues {
  double h0_value = 0.0;      // objective lift at (-s, 1): (2 gamma - n)/2
  double pencil_value = 0.0;  // band pencil at (-s, 1): -1, independent of mu
};

// Evaluates the homogenized gap system at (-s, 1). Both values are negative,
// so the point solves a system that the pencil argument needs to be
// unsolvable; this is the counterexample computation.
GapWitnessValues gap_witness_values(int n);

struct HypothesesReport {
  PdCombination combination;           // -2 H0 + (-2 - 2 gamma) corner(mu1,delta1) + corner(mu2,delta2)
  double combination_max_eigenvalue = 0.0;  // min is in `combination`; both equal 2
  ScaledFamilyReport scaled_family;    // top-left blocks of the one-sided lift list
  bool passes = false;
};

HypothesesReport convexity_hypotheses_report(int n);

}  // namespace robustqp
