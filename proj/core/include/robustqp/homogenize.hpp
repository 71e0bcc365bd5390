#pragma once

// Symmetric (n+1)x(n+1) lifts of the objective and of the band constraint.
// With y = (x, t) and the 1/2-convention used everywhere in this library:
//
//   H0        = [[A,  a ], [a',  2*gamma]]   eval(y)/t^2 = f(x/t) + gamma
//   W(d, lam) = [[B1, b1+d*b2], [., -2*lam]] eval(y)/t^2 = g(x/t; ., d) - lam
//   W2        = [[B2, 0 ], [0',  0      ]]
//
// Corner lifts add mu * W2 to W(delta, bound), one per rectangle corner, and
// the W-pencil rewrites the two-parameter family as W1 + mu * W2slope.

#include <optional>
#include <vector>

#include "robustqp/quadratic.hpp"

namespace robustqp {

struct HomogenizedSet {
  int n = 0;
  double gamma = 0.0;
  SymmetricMatrix H0;
  SymmetricMatrix W2;
  SymmetricMatrix W1beta, W2beta;  // W(delta1, beta), W(delta2, beta)
  std::optional<SymmetricMatrix> W1alpha, W2alpha;
  std::vector<SymmetricMatrix> beta_corners;   // Corner order, W(delta_j, beta) + mu_i * W2
  std::vector<SymmetricMatrix> alpha_corners;  // same, empty for one-sided constraints
};

SymmetricMatrix w_matrix(const UncertainConstraint& con, double delta, double lambda);

HomogenizedSet homogenize(const RobustInstance& instance, double gamma);

// (x,t)' M (x,t) / 2
double eval_homog(const SymmetricMatrix& m, const Vector& x, double t);

struct WPencil {
  SymmetricMatrix W1;       // bottom-right -2*beta
  SymmetricMatrix W2slope;  // bottom-right 0
};

// W1 = [[B1, b1 + ((d1*mu2 - d2*mu1)/(mu2 - mu1)) b2], [., -2*beta]]
// W2slope = [[B2, ((d2 - d1)/(mu2 - mu1)) b2], [., 0]]
// so that W1 + mu1*W2slope and W1 + mu2*W2slope are the (mu1,d1) and
// (mu2,d2) corner lifts. Requires mu1 < mu2.
WPencil build_w_pencil(const UncertainConstraint& con, double beta);

// Generators whose joint image decides convexity of the robust counterpart:
// two-sided gives (H0, the four upper corner lifts, the four negated lower
// corner lifts); one-sided gives the first five.
std::vector<SymmetricMatrix> omega_mu_generators(const HomogenizedSet& hs, bool two_sided);

}  // namespace robustqp
