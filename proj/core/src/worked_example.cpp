#include "robustqp/worked_example.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "robustqp/homogenize.hpp"
#include "robustqp/linalg.hpp"

namespace robustqp {

namespace {

void require_dimension(int n) {
  if (n <= 4) throw std::invalid_argument("ball-band example: closed forms require n >= 5");
}

}  // namespace

WorkedExample build_worked_example(int n) {
  require_dimension(n);
  Vector s(static_cast<std::size_t>(n), 1.0);

  WorkedExample ex;
  ex.instance.objective.Q = SymmetricMatrix::identity(n);
  ex.instance.objective.c = s;
  ex.instance.objective.r = 0.0;
  ex.instance.constraint.B1 = SymmetricMatrix::identity(n).scaled(2.0);
  ex.instance.constraint.B2 = ex.instance.constraint.B1;
  ex.instance.constraint.b1 = s;
  ex.instance.constraint.b2 = s;
  ex.instance.constraint.mu = {-1.0, 1.0};
  ex.instance.constraint.delta = {-1.0, 1.0};
  ex.instance.constraint.alpha = std::nullopt;
  ex.instance.constraint.beta = 1.0;
  ex.instance.validate();

  ex.xbar = Vector(static_cast<std::size_t>(n), -1.0 / std::sqrt(2.0 * n));
  ex.gamma = std::sqrt(n / 2.0) - 0.25;
  // Multiplier from stationarity at the active (mu, delta) = (1, -1) corner:
  // (1 + 2*lambda*(1+mu)) / sqrt(2n) = 1 + lambda*(1+delta), which collapses
  // to 1 + 4*lambda = sqrt(2n).
  ex.expected_cert.lambda = (std::sqrt(2.0 * n) - 1.0) / 4.0;
  ex.expected_cert.mu = 1.0;
  ex.expected_cert.delta = -1.0;
  ex.n = n;
  return ex;
}

GapWitnessValues gap_witness_values(int n) {
  require_dimension(n);
  const WorkedExample ex = build_worked_example(n);
  const HomogenizedSet hs = homogenize(ex.instance, ex.gamma);
  const WPencil pencil = build_w_pencil(ex.instance.constraint, ex.instance.constraint.beta);

  Vector minus_s(static_cast<std::size_t>(n), -1.0);

  GapWitnessValues out;
  out.h0_value = eval_homog(hs.H0, minus_s, 1.0);

  // The pencil value must not depend on where mu sits in its interval; a
  // drifting value here would mean (-s, 1) is not actually a solution of the
  // whole system.
  const Vector mus = uniform_grid(-1.0, 1.0, 11);
  bool first = true;
  for (double mu : mus) {
    SymmetricMatrix w = pencil.W1;
    w.axpy(mu, pencil.W2slope);
    const double value = eval_homog(w, minus_s, 1.0);
    if (first) {
      out.pencil_value = value;
      first = false;
    } else if (std::abs(value - out.pencil_value) > 1e-9) {
      throw std::logic_error("ball-band example: pencil value drifted across mu");
    }
  }

  if (!(out.h0_value < 0.0) || !(out.pencil_value < 0.0))
    throw std::logic_error("ball-band example: gap witness lost negativity");
  return out;
}

HypothesesReport convexity_hypotheses_report(int n) {
  require_dimension(n);
  const WorkedExample ex = build_worked_example(n);
  const HomogenizedSet hs = homogenize(ex.instance, ex.gamma);

  HypothesesReport report;

  // -2*H0 + (-2 - 2*gamma)*lift(mu1, delta1) + lift(mu2, delta2) is 2*I
  // exactly: the first corner lift is zero except for its -2 bottom-right
  // entry, so it only rescales the homogenizing coordinate.
  const std::vector<SymmetricMatrix> mats = {hs.H0, hs.beta_corners[0], hs.beta_corners[3]};
  const Vector coeffs = {-2.0, -2.0 - 2.0 * ex.gamma, 1.0};
  report.combination = verify_pd_combination(mats, coeffs);

  SymmetricMatrix combo(n + 1);
  for (std::size_t k = 0; k < mats.size(); ++k) combo.axpy(coeffs[k], mats[k]);
  const EigenSystem eig = sym_eigen(combo);
  report.combination_max_eigenvalue = eig.values.back();

  const std::vector<SymmetricMatrix> gens = omega_mu_generators(hs, false);
  std::vector<SymmetricMatrix> blocks;
  blocks.reserve(gens.size());
  for (const auto& g : gens) blocks.push_back(principal_block(g, n));
  report.scaled_family = check_scaled_family(blocks);

  report.passes = report.combination.positive_definite && report.scaled_family.passes &&
                  n >= static_cast<int>(gens.size());
  return report;
}

}  // namespace robustqp
