#include "robustqp/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "robustqp/linalg.hpp"
#include "robustqp/rng.hpp"

namespace robustqp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Endpoints are always on the grid, so rectangle corners are always swept.
std::vector<double> grid_points(const Interval& iv, int requested) {
  if (requested <= 0) return {};
  if (iv.lo == iv.hi) return {iv.lo};
  return uniform_grid(iv.lo, iv.hi, std::max(2, requested));
}

void require_search_budget(const SearchBudget& budget, const UncertainConstraint& con) {
  if (!(budget.tol > 0.0)) {
    throw std::invalid_argument("search tolerance must be positive");
  }
  if (con.mu.lo < con.mu.hi && budget.mu_grid < 2) {
    throw std::invalid_argument("mu grid must have at least two points");
  }
  if (con.delta.lo < con.delta.hi && budget.delta_grid < 2) {
    throw std::invalid_argument("delta grid must have at least two points");
  }
}

Vector feasible_gradient_column(const UncertainConstraint& con, const Vector& xbar) {
  Vector u = con.B1.multiply(xbar);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += con.b1[i];
  return u;
}

// Band value at xbar decomposes as p + mu q + delta t.
struct BandAtPoint {
  double p = 0.0, q = 0.0, t = 0.0;
  double operator()(double mu, double delta) const { return p + mu * q + delta * t; }
};

BandAtPoint band_at(const UncertainConstraint& con, const Vector& xbar) {
  BandAtPoint b;
  b.p = 0.5 * dot(xbar, con.B1.multiply(xbar)) + dot(con.b1, xbar);
  b.q = 0.5 * dot(xbar, con.B2.multiply(xbar));
  b.t = dot(con.b2, xbar);
  return b;
}

double fit_residual(const Vector& c1, const Vector& c2, const Vector& rhs, double l1,
                    double l2) {
  double s = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const double d = l1 * c1[i] + l2 * c2[i] - rhs[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Nonnegative least squares on two columns: the optimum is either interior
// (plain solve) or lies on a boundary face, all of which are enumerated.
int nnls_candidates(const Vector& c1, const Vector& c2, const Vector& rhs,
                    std::array<std::array<double, 2>, 4>& out) {
  const double g11 = dot(c1, c1);
  const double g22 = dot(c2, c2);
  const double g12 = dot(c1, c2);
  const double h1 = dot(c1, rhs);
  const double h2 = dot(c2, rhs);
  int count = 0;
  const double det = g11 * g22 - g12 * g12;
  if (det > 1e-14 * (g11 + g22) * (g11 + g22)) {
    const double l1 = (g22 * h1 - g12 * h2) / det;
    const double l2 = (g11 * h2 - g12 * h1) / det;
    if (l1 >= 0.0 && l2 >= 0.0) out[count++] = {l1, l2};
  }
  if (g11 > 0.0 && h1 / g11 >= 0.0) out[count++] = {h1 / g11, 0.0};
  if (g22 > 0.0 && h2 / g22 >= 0.0) out[count++] = {0.0, h2 / g22};
  out[count++] = {0.0, 0.0};
  return count;
}

}  // namespace

std::optional<OptimalityCertificate> search_optimality_certificate(
    const RobustInstance& instance, const Vector& xbar, const SearchBudget& budget) {
  instance.validate();
  const UncertainConstraint& con = instance.constraint;
  if (!con.alpha.has_value()) {
    throw std::invalid_argument("one-sided instance: use the one-sided search");
  }
  require_search_budget(budget, con);
  if (xbar.size() != static_cast<std::size_t>(instance.n())) {
    throw std::invalid_argument("candidate point has the wrong dimension");
  }
  if (!is_robust_feasible(instance, xbar, budget.tol).feasible) {
    throw std::invalid_argument("candidate point is not robust feasible");
  }

  const Vector u = feasible_gradient_column(con, xbar);
  const Vector v = con.B2.multiply(xbar);
  const Vector& w = con.b2;
  Vector rhs = instance.objective.Q.multiply(xbar);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    rhs[i] = -(rhs[i] + instance.objective.c[i]);
  }
  const BandAtPoint g = band_at(con, xbar);

  const std::vector<double> mu_values = grid_points(con.mu, budget.mu_grid);
  const std::vector<double> delta_values = grid_points(con.delta, budget.delta_grid);
  const double mu_sum = con.mu.lo + con.mu.hi;
  const double alpha = *con.alpha;

  std::optional<double> objective_min_eig;  // memo for the zero-multiplier curvature
  const auto curvature_ok = [&](double l1, double l2, double mu_b, double mu_a) {
    if (l1 == 0.0 && l2 == 0.0) {
      if (!objective_min_eig.has_value()) {
        objective_min_eig = min_eigenvalue(instance.objective.Q);
      }
      return *objective_min_eig >=
             -budget.tol * (1.0 + instance.objective.Q.max_abs_entry());
    }
    SymmetricMatrix m = instance.objective.Q;
    m.axpy(l1 - l2, con.B1);
    m.axpy(l1 * mu_b - l2 * mu_a, con.B2);
    return min_eigenvalue(m) >= -budget.tol * (1.0 + m.max_abs_entry());
  };

  std::array<double, 6> best_key = {kInf, kInf, kInf, kInf, kInf, kInf};
  std::optional<OptimalityCertificate> best;

  Vector c1(rhs.size(), 0.0), c2(rhs.size(), 0.0);
  std::array<std::array<double, 2>, 4> cand;
  for (double mu_b : mu_values) {
    const double mu_a = mu_sum - mu_b;
    for (double d_b : delta_values) {
      for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = u[i] + mu_b * v[i] + d_b * w[i];
      for (double d_a : delta_values) {
        for (std::size_t i = 0; i < c2.size(); ++i) {
          c2[i] = -(u[i] + mu_a * v[i] + d_a * w[i]);
        }
        const int count = nnls_candidates(c1, c2, rhs, cand);
        for (int k = 0; k < count; ++k) {
          const double l1 = cand[k][0];
          const double l2 = cand[k][1];
          const double residual = fit_residual(c1, c2, rhs, l1, l2);
          if (residual > budget.tol) continue;
          const double comp_b = l1 * (g(mu_b, d_b) - con.beta);
          const double comp_a = l2 * (alpha - g(mu_a, d_a));
          if (std::abs(comp_b) > budget.tol || std::abs(comp_a) > budget.tol) continue;
          const std::array<double, 6> key = {
              std::max({residual, std::abs(comp_b), std::abs(comp_a)}), mu_b, d_b, d_a, l1, l2};
          if (!(key < best_key)) continue;
          if (!curvature_ok(l1, l2, mu_b, mu_a)) continue;
          best_key = key;
          OptimalityCertificate cert;
          cert.lambda1 = l1;
          cert.lambda2 = l2;
          cert.mu_beta = mu_b;
          cert.mu_alpha = mu_a;
          cert.delta_beta = d_b;
          cert.delta_alpha = d_a;
          best = cert;
        }
      }
    }
  }
  return best;
}

std::optional<OneSidedCertificate> search_one_sided_certificate(
    const RobustInstance& instance, const Vector& xbar, const SearchBudget& budget) {
  instance.validate();
  const UncertainConstraint& con = instance.constraint;
  if (con.alpha.has_value()) {
    throw std::invalid_argument("two-sided instance: use the two-sided search");
  }
  require_search_budget(budget, con);
  if (xbar.size() != static_cast<std::size_t>(instance.n())) {
    throw std::invalid_argument("candidate point has the wrong dimension");
  }
  if (!is_robust_feasible(instance, xbar, budget.tol).feasible) {
    throw std::invalid_argument("candidate point is not robust feasible");
  }

  const Vector u = feasible_gradient_column(con, xbar);
  const Vector v = con.B2.multiply(xbar);
  const Vector& w = con.b2;
  Vector rhs = instance.objective.Q.multiply(xbar);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    rhs[i] = -(rhs[i] + instance.objective.c[i]);
  }
  const BandAtPoint g = band_at(con, xbar);

  std::optional<double> objective_min_eig;
  const auto curvature_ok = [&](double lambda, double mu) {
    if (lambda == 0.0) {
      if (!objective_min_eig.has_value()) {
        objective_min_eig = min_eigenvalue(instance.objective.Q);
      }
      return *objective_min_eig >=
             -budget.tol * (1.0 + instance.objective.Q.max_abs_entry());
    }
    SymmetricMatrix m = instance.objective.Q;
    m.axpy(lambda, con.B1);
    m.axpy(lambda * mu, con.B2);
    return min_eigenvalue(m) >= -budget.tol * (1.0 + m.max_abs_entry());
  };

  std::array<double, 4> best_key = {kInf, kInf, kInf, kInf};
  std::optional<OneSidedCertificate> best;

  Vector c1(rhs.size(), 0.0);
  for (double mu : grid_points(con.mu, budget.mu_grid)) {
    for (double d : grid_points(con.delta, budget.delta_grid)) {
      for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = u[i] + mu * v[i] + d * w[i];
      const double gram = dot(c1, c1);
      const double h = dot(c1, rhs);
      std::array<double, 2> lambdas = {0.0, 0.0};
      int count = 0;
      if (gram > 0.0 && h / gram >= 0.0) lambdas[count++] = h / gram;
      lambdas[count++] = 0.0;
      for (int k = 0; k < count; ++k) {
        const double lambda = lambdas[k];
        double s = 0.0;
        for (std::size_t i = 0; i < c1.size(); ++i) {
          const double diff = lambda * c1[i] - rhs[i];
          s += diff * diff;
        }
        const double residual = std::sqrt(s);
        if (residual > budget.tol) continue;
        const double comp = lambda * (g(mu, d) - con.beta);
        if (std::abs(comp) > budget.tol) continue;
        const std::array<double, 4> key = {std::max(residual, std::abs(comp)), mu, d, lambda};
        if (!(key < best_key)) continue;
        if (!curvature_ok(lambda, mu)) continue;
        best_key = key;
        best = OneSidedCertificate{lambda, mu, d};
      }
    }
  }
  return best;
}

namespace {

// Largest multiplier considered by the per-cell concave ascent; a declared
// search limitation, like the sampling box for witnesses.
constexpr double kLambdaCap = 64.0;

}  // namespace

AlternativeDecision decide_alternative(const RobustInstance& instance, double gamma,
                                       const SearchBudget& budget) {
  instance.validate();
  const UncertainConstraint& con = instance.constraint;
  if (!con.alpha.has_value()) {
    throw std::invalid_argument("the alternative requires a finite lower bound");
  }
  if (!(budget.tol > 0.0)) {
    throw std::invalid_argument("search tolerance must be positive");
  }

  AlternativeDecision decision;
  const std::size_t n = static_cast<std::size_t>(instance.n());
  const double tol = budget.tol;

  // Phase 1: sample for a strict witness, refine by coordinate descent.
  if (budget.sample_count > 0 && budget.box_halfwidth > 0.0) {
    Rng rng(budget.seed);
    Vector x(n, 0.0);
    const auto strictly_inside = [&](const Vector& y) {
      const FeasibilityReport rep = is_robust_feasible(instance, y, 0.0);
      return rep.upper_margin >= tol && rep.lower_margin >= tol;
    };
    for (int s = 0; s < budget.sample_count; ++s) {
      for (double& xi : x) xi = rng.uniform(-budget.box_halfwidth, budget.box_halfwidth);
      if (!strictly_inside(x)) continue;
      if (instance.objective.eval(x) + gamma > -tol) continue;

      double step = budget.box_halfwidth / 8.0;
      double value = instance.objective.eval(x);
      for (int iter = 0; iter < 100; ++iter) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          for (double dir : {-1.0, 1.0}) {
            Vector y = x;
            y[i] += dir * step;
            const double candidate = instance.objective.eval(y);
            if (candidate < value && strictly_inside(y)) {
              x = y;
              value = candidate;
              improved = true;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
      decision.outcome = AlternativeOutcome::branch_a;
      decision.witness = WitnessPoint{x};
      return decision;
    }
  }

  const std::vector<double> mu_values = grid_points(con.mu, budget.mu_grid);
  const std::vector<double> delta_values = grid_points(con.delta, budget.delta_grid);
  if (mu_values.empty() || delta_values.empty()) return decision;

  const double mu_sum = con.mu.lo + con.mu.hi;
  const long long cells = static_cast<long long>(mu_values.size()) *
                          static_cast<long long>(delta_values.size()) *
                          static_cast<long long>(delta_values.size());

  // Phase 2, lambda0 = 1: concave coordinate ascent on the aggregate infimum.
  long long ascent_evals = std::min(cells, 2000LL) * 700;
  const auto accept = [&](double lambda0, const OptimalityCertificate& inner) {
    AlternativeMultipliers m;
    m.lambda0 = lambda0;
    m.inner = inner;
    if (!verify_alternative_certificate(instance, gamma, AlternativeCertificate{m}, tol).passed) {
      return false;
    }
    decision.outcome = AlternativeOutcome::branch_b;
    decision.multipliers = m;
    return true;
  };
  // Evaluates the aggregate infimum; true means it already clears the
  // global nonnegativity threshold.
  const auto infimum_clears = [&](const OptimalityCertificate& cert, double& value) {
    ascent_evals -= 1;
    const QuadraticFunction h = aggregate_quadratic(instance, gamma, 1.0, cert);
    value = convex_quadratic_infimum(h.Q, h.c, h.r);
    return value >= -1e-9 * (1.0 + std::abs(h.r));
  };

  for (double mu_b : mu_values) {
    if (ascent_evals <= 0) break;
    for (double d_b : delta_values) {
      for (double d_a : delta_values) {
        if (ascent_evals <= 0) break;
        OptimalityCertificate cert;
        cert.mu_beta = mu_b;
        cert.mu_alpha = mu_sum - mu_b;
        cert.delta_beta = d_b;
        cert.delta_alpha = d_a;
        double current = 0.0;
        if (infimum_clears(cert, current) && accept(1.0, cert)) return decision;
        for (int round = 0; round < 4 && ascent_evals > 0; ++round) {
          for (int coord = 0; coord < 2; ++coord) {
            double* lambda = coord == 0 ? &cert.lambda1 : &cert.lambda2;
            const double saved = *lambda;
            double lo = 0.0, hi = kLambdaCap;
            for (int it = 0; it < 30 && ascent_evals > 0; ++it) {
              const double m1 = lo + (hi - lo) / 3.0;
              const double m2 = hi - (hi - lo) / 3.0;
              double f1 = 0.0, f2 = 0.0;
              *lambda = m1;
              if (infimum_clears(cert, f1) && accept(1.0, cert)) return decision;
              *lambda = m2;
              if (infimum_clears(cert, f2) && accept(1.0, cert)) return decision;
              if (f1 < f2) {
                lo = m1;
              } else {
                hi = m2;
              }
            }
            *lambda = 0.5 * (lo + hi);
            double fm = 0.0;
            if (infimum_clears(cert, fm) && accept(1.0, cert)) return decision;
            if (fm < current) {
              *lambda = saved;  // the sweep found nothing better on this coordinate
            } else {
              current = fm;
            }
          }
        }
      }
    }
  }

  // Phase 2, lambda0 = 0: sweep the multiplier simplex lambda1 + lambda2 = 1.
  long long simplex_evals = std::min(cells, 2000LL) * 32;
  const int simplex_resolution = std::max(2, budget.mu_grid);
  for (double t : uniform_grid(0.0, 1.0, simplex_resolution)) {
    if (simplex_evals <= 0) break;
    for (double mu_b : mu_values) {
      if (simplex_evals <= 0) break;
      for (double d_b : delta_values) {
        if (simplex_evals <= 0) break;
        for (double d_a : delta_values) {
          if (--simplex_evals < 0) break;
          OptimalityCertificate cert;
          cert.lambda1 = t;
          cert.lambda2 = 1.0 - t;
          cert.mu_beta = mu_b;
          cert.mu_alpha = mu_sum - mu_b;
          cert.delta_beta = d_b;
          cert.delta_alpha = d_a;
          const QuadraticFunction h = aggregate_quadratic(instance, gamma, 0.0, cert);
          if (global_nonneg(h) && accept(0.0, cert)) return decision;
        }
      }
    }
  }
  return decision;
}

}  // namespace robustqp
