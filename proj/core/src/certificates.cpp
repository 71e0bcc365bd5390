#include "robustqp/certificates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "robustqp/linalg.hpp"

namespace robustqp {

namespace {

constexpr double kParamSlack = 1e-9;     // rectangle membership slack
constexpr double kCouplingTol = 1e-12;   // |mu_alpha + mu_beta - (mu1 + mu2)|

bool inside(double value, const Interval& box, double slack) {
  return value >= box.lo - slack && value <= box.hi + slack;
}

void validate_multipliers(const RobustInstance& instance, const OptimalityCertificate& cert) {
  if (cert.lambda1 < 0.0 || cert.lambda2 < 0.0) {
    throw std::invalid_argument("certificate multipliers must be nonnegative");
  }
  const UncertainConstraint& con = instance.constraint;
  if (!inside(cert.mu_alpha, con.mu, kParamSlack) || !inside(cert.mu_beta, con.mu, kParamSlack)) {
    throw std::invalid_argument("certificate mu realization outside the uncertainty interval");
  }
  if (!inside(cert.delta_alpha, con.delta, kParamSlack) ||
      !inside(cert.delta_beta, con.delta, kParamSlack)) {
    throw std::invalid_argument("certificate delta realization outside the uncertainty interval");
  }
  const double coupling = cert.mu_alpha + cert.mu_beta - (con.mu.lo + con.mu.hi);
  if (std::abs(coupling) > kCouplingTol) {
    throw std::invalid_argument("certificate mu realizations violate the coupling identity");
  }
}

// B1 + mu * B2
SymmetricMatrix realized_matrix(const UncertainConstraint& con, double mu) {
  SymmetricMatrix m = con.B1;
  m.axpy(mu, con.B2);
  return m;
}

// b1 + delta * b2
Vector realized_vector(const UncertainConstraint& con, double delta) {
  Vector v = con.b1;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += delta * con.b2[i];
  return v;
}

double band_value(const UncertainConstraint& con, const Vector& x, double mu, double delta) {
  const SymmetricMatrix m = realized_matrix(con, mu);
  const Vector b = realized_vector(con, delta);
  return 0.5 * dot(x, m.multiply(x)) + dot(b, x);
}

}  // namespace

QuadraticFunction aggregate_quadratic(const RobustInstance& instance, double gamma,
                                      double lambda0, const OptimalityCertificate& cert) {
  const UncertainConstraint& con = instance.constraint;
  if (cert.lambda2 > 0.0 && !con.alpha.has_value()) {
    throw std::invalid_argument("lower-bound multiplier requires a finite lower bound");
  }
  const std::size_t n = static_cast<std::size_t>(instance.n());
  QuadraticFunction h;
  h.Q = SymmetricMatrix(instance.n());
  h.Q.axpy(lambda0, instance.objective.Q);
  h.Q.axpy(cert.lambda1, realized_matrix(con, cert.mu_beta));
  h.Q.axpy(-cert.lambda2, realized_matrix(con, cert.mu_alpha));

  const Vector b_beta = realized_vector(con, cert.delta_beta);
  const Vector b_alpha = realized_vector(con, cert.delta_alpha);
  h.c.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    h.c[i] = lambda0 * instance.objective.c[i] + cert.lambda1 * b_beta[i] -
             cert.lambda2 * b_alpha[i];
  }
  const double alpha = cert.lambda2 > 0.0 ? *con.alpha : 0.0;
  h.r = lambda0 * (instance.objective.r + gamma) - cert.lambda1 * con.beta +
        cert.lambda2 * alpha;
  return h;
}

bool global_nonneg(const QuadraticFunction& q) {
  const double inf = convex_quadratic_infimum(q.Q, q.c, q.r);
  return inf >= -1e-9 * (1.0 + std::abs(q.r));
}

VerificationReport verify_optimality_certificate(const RobustInstance& instance,
                                                 const Vector& xbar,
                                                 const OptimalityCertificate& cert, double tol) {
  instance.validate();
  if (!instance.constraint.alpha.has_value()) {
    throw std::invalid_argument("one-sided instance: use the one-sided verifier");
  }
  if (xbar.size() != static_cast<std::size_t>(instance.n())) {
    throw std::invalid_argument("candidate point has the wrong dimension");
  }
  validate_multipliers(instance, cert);

  const FeasibilityReport feas = is_robust_feasible(instance, xbar, tol);
  if (!feas.feasible) {
    throw std::invalid_argument("candidate point is not robust feasible");
  }

  const UncertainConstraint& con = instance.constraint;

  SymmetricMatrix curvature = instance.objective.Q;
  curvature.axpy(cert.lambda1, realized_matrix(con, cert.mu_beta));
  curvature.axpy(-cert.lambda2, realized_matrix(con, cert.mu_alpha));

  const Vector b_beta = realized_vector(con, cert.delta_beta);
  const Vector b_alpha = realized_vector(con, cert.delta_alpha);
  Vector grad = curvature.multiply(xbar);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] += instance.objective.c[i] + cert.lambda1 * b_beta[i] - cert.lambda2 * b_alpha[i];
  }

  VerificationReport report;
  report.tolerance = tol;
  report.stationarity_residual = std::sqrt(dot(grad, grad));
  report.complementarity_beta =
      cert.lambda1 * (band_value(con, xbar, cert.mu_beta, cert.delta_beta) - con.beta);
  report.complementarity_alpha =
      cert.lambda2 * (*con.alpha - band_value(con, xbar, cert.mu_alpha, cert.delta_alpha));
  report.min_eigenvalue = min_eigenvalue(curvature);
  report.upper_margin = feas.upper_margin;
  report.lower_margin = feas.lower_margin;

  const double eig_floor = -tol * (1.0 + curvature.max_abs_entry());
  report.passed = report.stationarity_residual <= tol &&
                  std::abs(report.complementarity_beta) <= tol &&
                  std::abs(report.complementarity_alpha) <= tol &&
                  report.min_eigenvalue >= eig_floor;
  return report;
}

VerificationReport verify_one_sided_certificate(const RobustInstance& instance,
                                                const Vector& xbar,
                                                const OneSidedCertificate& cert, double tol) {
  instance.validate();
  if (xbar.size() != static_cast<std::size_t>(instance.n())) {
    throw std::invalid_argument("candidate point has the wrong dimension");
  }
  const UncertainConstraint& con = instance.constraint;
  if (cert.lambda < 0.0) {
    throw std::invalid_argument("certificate multiplier must be nonnegative");
  }
  if (!inside(cert.mu, con.mu, kParamSlack) || !inside(cert.delta, con.delta, kParamSlack)) {
    throw std::invalid_argument("certificate realization outside the uncertainty rectangle");
  }

  const FeasibilityReport feas = is_robust_feasible(instance, xbar, tol);
  if (!feas.feasible) {
    throw std::invalid_argument("candidate point is not robust feasible");
  }

  SymmetricMatrix curvature = instance.objective.Q;
  curvature.axpy(cert.lambda, realized_matrix(con, cert.mu));

  const Vector b = realized_vector(con, cert.delta);
  Vector grad = curvature.multiply(xbar);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] += instance.objective.c[i] + cert.lambda * b[i];
  }

  VerificationReport report;
  report.tolerance = tol;
  report.stationarity_residual = std::sqrt(dot(grad, grad));
  report.complementarity_beta =
      cert.lambda * (band_value(con, xbar, cert.mu, cert.delta) - con.beta);
  report.complementarity_alpha = 0.0;
  report.min_eigenvalue = min_eigenvalue(curvature);
  report.upper_margin = feas.upper_margin;
  report.lower_margin = feas.lower_margin;

  const double eig_floor = -tol * (1.0 + curvature.max_abs_entry());
  report.passed = report.stationarity_residual <= tol &&
                  std::abs(report.complementarity_beta) <= tol &&
                  report.min_eigenvalue >= eig_floor;
  return report;
}

VerificationReport verify_alternative_certificate(const RobustInstance& instance, double gamma,
                                                  const AlternativeCertificate& cert,
                                                  double tol) {
  instance.validate();
  VerificationReport report;
  report.tolerance = tol;

  if (const WitnessPoint* w = std::get_if<WitnessPoint>(&cert)) {
    if (w->x.size() != static_cast<std::size_t>(instance.n())) {
      throw std::invalid_argument("witness point has the wrong dimension");
    }
    const Range range = robust_range(instance.constraint, w->x);
    report.objective_margin = -(instance.objective.eval(w->x) + gamma);
    report.upper_margin = instance.constraint.beta - range.hi;
    report.lower_margin = instance.constraint.alpha.has_value()
                              ? range.lo - *instance.constraint.alpha
                              : std::numeric_limits<double>::infinity();
    report.passed = report.objective_margin >= tol && report.upper_margin >= tol &&
                    report.lower_margin >= tol;
    return report;
  }

  const AlternativeMultipliers& m = std::get<AlternativeMultipliers>(cert);
  if (m.lambda0 != 0.0 && m.lambda0 != 1.0) {
    throw std::invalid_argument("lambda0 must be normalized to 0 or 1");
  }
  validate_multipliers(instance, m.inner);
  if (m.lambda0 == 0.0 && m.inner.lambda1 == 0.0 && m.inner.lambda2 == 0.0) {
    report.passed = false;  // the zero multiplier certifies nothing
    return report;
  }

  const QuadraticFunction h = aggregate_quadratic(instance, gamma, m.lambda0, m.inner);
  report.min_eigenvalue = min_eigenvalue(h.Q);
  report.objective_margin = convex_quadratic_infimum(h.Q, h.c, h.r);
  report.passed = global_nonneg(h);
  return report;
}

bool check_slater(const RobustInstance& instance, const Vector& x0, double margin) {
  instance.validate();
  if (!(margin > 0.0)) {
    throw std::invalid_argument("margin must be positive");
  }
  if (x0.size() != static_cast<std::size_t>(instance.n())) {
    throw std::invalid_argument("point has the wrong dimension");
  }
  const Range range = robust_range(instance.constraint, x0);
  if (range.hi > instance.constraint.beta - margin) return false;
  if (instance.constraint.alpha.has_value() && range.lo < *instance.constraint.alpha + margin) {
    return false;
  }
  return true;
}

}  // namespace robustqp
