#include "robustqp/certificates.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "robustqp/linalg.hpp"
#include "robustqp/quadratic.hpp"
#include "robustqp/rng.hpp"
#include "support.hpp"

using namespace robustqp;
using testsupport::band_gamma;
using testsupport::band_instance;
using testsupport::band_minimizer;
using testsupport::band_multiplier;
using testsupport::scalar_instance;

namespace {

RobustInstance random_instance(Rng& rng, int n) {
  RobustInstance inst;
  inst.objective.Q = SymmetricMatrix(n);
  inst.constraint.B1 = SymmetricMatrix(n);
  inst.constraint.B2 = SymmetricMatrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      inst.objective.Q.set(i, j, rng.uniform(-1.0, 1.0));
      inst.constraint.B1.set(i, j, rng.uniform(-1.0, 1.0));
      inst.constraint.B2.set(i, j, 0.3 * rng.uniform(-1.0, 1.0));
    }
  }
  const std::size_t un = static_cast<std::size_t>(n);
  inst.objective.c.assign(un, 0.0);
  inst.constraint.b1.assign(un, 0.0);
  inst.constraint.b2.assign(un, 0.0);
  for (std::size_t i = 0; i < un; ++i) {
    inst.objective.c[i] = rng.uniform(-1.0, 1.0);
    inst.constraint.b1[i] = rng.uniform(-1.0, 1.0);
    inst.constraint.b2[i] = rng.uniform(-0.5, 0.5);
  }
  inst.constraint.mu = {-0.5, 0.7};
  inst.constraint.delta = {-0.2, 0.9};
  inst.constraint.alpha = -2.0;
  inst.constraint.beta = 3.0;
  return inst;
}

Vector random_point(Rng& rng, int n) {
  Vector x(static_cast<std::size_t>(n), 0.0);
  for (double& v : x) v = rng.uniform(-2.0, 2.0);
  return x;
}

}  // namespace

TEST_SUITE("certificates") {

TEST_CASE("aggregate combines objective and band terms coefficient-wise") {
  // f = x^2/2 + x, band x^2 <= 1/4; with gamma = 3/8 and lambda1 = 1/2 the
  // aggregate collapses to (x + 1/2)^2.
  const RobustInstance inst = scalar_instance(1.0, 1.0, 2.0, 0.0, -10.0, 0.25);
  OptimalityCertificate cert;
  cert.lambda1 = 0.5;
  const QuadraticFunction h = aggregate_quadratic(inst, 0.375, 1.0, cert);
  CHECK(h.Q(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(h.c[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.r == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(h.eval({-0.5}) == doctest::Approx(0.0).epsilon(1e-15));

  SUBCASE("multiplier-free aggregate is the shifted objective") {
    const QuadraticFunction f = aggregate_quadratic(inst, 0.375, 1.0, OptimalityCertificate{});
    CHECK(f.Q(0, 0) == 1.0);
    CHECK(f.c[0] == 1.0);
    CHECK(f.r == 0.375);
  }

  SUBCASE("lower-bound multiplier can cancel the objective exactly") {
    // f = x^2/2, band x^2 in [1, 4], lambda2 = 1/2, gamma = -1/2: identically zero.
    const RobustInstance inst2 = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
    OptimalityCertificate low;
    low.lambda2 = 0.5;
    const QuadraticFunction h2 = aggregate_quadratic(inst2, -0.5, 1.0, low);
    CHECK(h2.Q(0, 0) == 0.0);
    CHECK(h2.c[0] == 0.0);
    CHECK(h2.r == 0.0);
  }

  SUBCASE("lower-bound multiplier without a lower bound is rejected") {
    OptimalityCertificate low;
    low.lambda2 = 0.1;
    CHECK_THROWS_AS(aggregate_quadratic(band_instance(5), 0.0, 1.0, low),
                    std::invalid_argument);
  }
}

TEST_CASE("aggregate evaluation matches the termwise sum on random data") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const RobustInstance inst = random_instance(rng, 3);
    const double gamma = rng.uniform(-1.0, 1.0);
    const double lambda0 = trial % 3 == 0 ? 0.0 : 1.0;
    OptimalityCertificate cert;
    cert.lambda1 = std::abs(rng.uniform(0.0, 2.0));
    cert.lambda2 = std::abs(rng.uniform(0.0, 2.0));
    cert.mu_beta = rng.uniform(inst.constraint.mu.lo, inst.constraint.mu.hi);
    cert.mu_alpha = inst.constraint.mu.lo + inst.constraint.mu.hi - cert.mu_beta;
    cert.delta_beta = rng.uniform(inst.constraint.delta.lo, inst.constraint.delta.hi);
    cert.delta_alpha = rng.uniform(inst.constraint.delta.lo, inst.constraint.delta.hi);
    const QuadraticFunction h = aggregate_quadratic(inst, gamma, lambda0, cert);

    const QuadraticFunction g_beta =
        constraint_at(inst.constraint, cert.mu_beta, cert.delta_beta);
    const QuadraticFunction g_alpha =
        constraint_at(inst.constraint, cert.mu_alpha, cert.delta_alpha);
    for (int k = 0; k < 20; ++k) {
      const Vector x = random_point(rng, 3);
      const double direct = lambda0 * (inst.objective.eval(x) + gamma) +
                            cert.lambda1 * (g_beta.eval(x) - inst.constraint.beta) +
                            cert.lambda2 * (*inst.constraint.alpha - g_alpha.eval(x));
      CHECK(h.eval(x) == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("global nonnegativity test accepts exactly the convex nonnegative cases") {
  QuadraticFunction q;
  q.Q = SymmetricMatrix(1);

  q.Q.set(0, 0, 2.0);
  q.c = {1.0};
  q.r = 0.25;  // (x + 1/2)^2
  CHECK(global_nonneg(q));

  q.c = {-1.0};
  q.r = 0.0;  // x^2 - x, infimum -1/4
  CHECK_FALSE(global_nonneg(q));

  q.Q.set(0, 0, 0.0);
  q.c = {0.0};
  q.r = 0.0;
  CHECK(global_nonneg(q));

  q.r = -1e-6;
  CHECK_FALSE(global_nonneg(q));

  q.Q.set(0, 0, -2.0);
  q.r = 5.0;  // concave
  CHECK_FALSE(global_nonneg(q));

  q.Q.set(0, 0, 0.0);
  q.c = {1.0};
  q.r = 1.0;  // linear term, unbounded below
  CHECK_FALSE(global_nonneg(q));

  QuadraticFunction rank_deficient;
  rank_deficient.Q = SymmetricMatrix(2);
  rank_deficient.Q.set(0, 0, 1.0);
  rank_deficient.c = {0.0, 1.0};  // slope along the null space
  rank_deficient.r = 10.0;
  CHECK_FALSE(global_nonneg(rank_deficient));
}

TEST_CASE("two-sided verifier accepts a hand-checked KKT point") {
  // f = x^2/2, band x^2 in [1, 4]. At xbar = 1 the lower bound is active with
  // multiplier 1/2 and the Lagrangian curvature is exactly zero.
  const RobustInstance inst = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  OptimalityCertificate cert;
  cert.lambda2 = 0.5;
  const VerificationReport rep = verify_optimality_certificate(inst, {1.0}, cert, 1e-10);
  CHECK(rep.passed);
  CHECK(rep.stationarity_residual == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rep.complementarity_beta == 0.0);
  CHECK(rep.complementarity_alpha == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rep.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.upper_margin == doctest::Approx(3.0));
  CHECK(rep.lower_margin == doctest::Approx(0.0));
  CHECK(rep.tolerance == 1e-10);

  SUBCASE("wrong multiplier fails with the expected residuals") {
    OptimalityCertificate bad;
    bad.lambda2 = 1.0;
    const VerificationReport r = verify_optimality_certificate(inst, {1.0}, bad, 1e-10);
    CHECK_FALSE(r.passed);
    CHECK(r.stationarity_residual == doctest::Approx(1.0));
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
    CHECK(r.complementarity_alpha == doctest::Approx(0.0));
  }

  SUBCASE("interior point verifies with the all-zero certificate") {
    // f = x^2/2 + x is stationary at -1, strictly inside the band [-10, 4].
    const RobustInstance interior = scalar_instance(1.0, 1.0, 2.0, 0.0, -10.0, 4.0);
    const VerificationReport r =
        verify_optimality_certificate(interior, {-1.0}, OptimalityCertificate{}, 1e-12);
    CHECK(r.passed);
    CHECK(r.stationarity_residual == 0.0);
    CHECK(r.min_eigenvalue == doctest::Approx(1.0));
  }
}

TEST_CASE("two-sided verifier rejects malformed inputs") {
  const RobustInstance inst = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  OptimalityCertificate cert;
  cert.lambda2 = 0.5;

  SUBCASE("negative multiplier") {
    cert.lambda1 = -1e-3;
    CHECK_THROWS_AS(verify_optimality_certificate(inst, {1.0}, cert, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("mu realization outside the interval") {
    cert.mu_beta = 1.5;
    cert.mu_alpha = -1.5;
    CHECK_THROWS_AS(verify_optimality_certificate(inst, {1.0}, cert, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("coupling identity violated") {
    cert.mu_beta = 0.5;
    cert.mu_alpha = 0.5;  // sum must equal mu.lo + mu.hi = 0
    CHECK_THROWS_AS(verify_optimality_certificate(inst, {1.0}, cert, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("infeasible candidate point") {
    CHECK_THROWS_AS(verify_optimality_certificate(inst, {10.0}, cert, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("wrong dimension") {
    CHECK_THROWS_AS(verify_optimality_certificate(inst, {1.0, 0.0}, cert, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("one-sided instance routed to the wrong verifier") {
    CHECK_THROWS_AS(verify_optimality_certificate(band_instance(5), band_minimizer(5),
                                                  OptimalityCertificate{}, 1e-8),
                    std::invalid_argument);
  }
}

TEST_CASE("one-sided verifier accepts the ball-band optimum") {
  const RobustInstance inst = band_instance(5);
  const Vector xbar = band_minimizer(5);
  OneSidedCertificate cert;
  cert.lambda = band_multiplier(5);
  cert.mu = 1.0;
  cert.delta = -1.0;

  const VerificationReport rep = verify_one_sided_certificate(inst, xbar, cert, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.stationarity_residual <= 1e-13);
  CHECK(std::abs(rep.complementarity_beta) <= 1e-13);
  // curvature is (1 + 4 lambda) I = sqrt(10) I
  CHECK(rep.min_eigenvalue == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(rep.upper_margin == doctest::Approx(0.0));
  CHECK(std::isinf(rep.lower_margin));

  SUBCASE("dropping the multiplier breaks stationarity") {
    OneSidedCertificate zero;
    const VerificationReport r = verify_one_sided_certificate(inst, xbar, zero, 1e-8);
    CHECK_FALSE(r.passed);
    Vector grad(xbar);
    for (double& v : grad) v += 1.0;  // Q xbar + c with Q = I, c = 1
    CHECK(r.stationarity_residual == doctest::Approx(norm2(grad)));
  }

  SUBCASE("rejections") {
    OneSidedCertificate bad = cert;
    bad.lambda = -0.1;
    CHECK_THROWS_AS(verify_one_sided_certificate(inst, xbar, bad, 1e-8),
                    std::invalid_argument);
    bad = cert;
    bad.mu = 2.0;
    CHECK_THROWS_AS(verify_one_sided_certificate(inst, xbar, bad, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_one_sided_certificate(inst, Vector(5, 1.0), cert, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_one_sided_certificate(inst, Vector(4, 0.0), cert, 1e-8),
                    std::invalid_argument);
  }
}

TEST_CASE("one- and two-sided verification agree when the lower bound is inactive") {
  // f = x^2/2 + x with band x^2 <= 1/4: active at xbar = -1/2, lambda = 1/2.
  const RobustInstance one_sided = scalar_instance(1.0, 1.0, 2.0, 0.0, std::nullopt, 0.25);
  const RobustInstance two_sided = scalar_instance(1.0, 1.0, 2.0, 0.0, -100.0, 0.25);
  const Vector xbar = {-0.5};

  for (double lambda : {0.5, 0.4, 0.6, 0.0}) {
    OneSidedCertificate oc;
    oc.lambda = lambda;
    OptimalityCertificate tc;
    tc.lambda1 = lambda;

    const VerificationReport a = verify_one_sided_certificate(one_sided, xbar, oc, 1e-9);
    const VerificationReport b = verify_optimality_certificate(two_sided, xbar, tc, 1e-9);
    CHECK(a.passed == (lambda == 0.5));
    CHECK(a.passed == b.passed);
    CHECK(a.stationarity_residual == doctest::Approx(b.stationarity_residual).epsilon(1e-14));
    CHECK(a.complementarity_beta == doctest::Approx(b.complementarity_beta).epsilon(1e-14));
    CHECK(a.min_eigenvalue == doctest::Approx(b.min_eigenvalue).epsilon(1e-14));
    CHECK(a.upper_margin == doctest::Approx(b.upper_margin));
    CHECK(std::isinf(a.lower_margin));
    CHECK(b.lower_margin == doctest::Approx(100.25));
  }
}

TEST_CASE("witness verification checks all three strict margins") {
  // f = x^2, band x^2 in [-10, 1], gamma = -1/2: x = 0 drops the objective
  // below zero while staying strictly inside the band.
  const RobustInstance inst = scalar_instance(2.0, 0.0, 2.0, 0.0, -10.0, 1.0);
  const double tol = 1e-8;

  const VerificationReport ok =
      verify_alternative_certificate(inst, -0.5, AlternativeCertificate{WitnessPoint{{0.0}}}, tol);
  CHECK(ok.passed);
  CHECK(ok.objective_margin == doctest::Approx(0.5));
  CHECK(ok.upper_margin == doctest::Approx(1.0));
  CHECK(ok.lower_margin == doctest::Approx(10.0));

  SUBCASE("band boundary is rejected") {
    const VerificationReport r = verify_alternative_certificate(
        inst, -0.5, AlternativeCertificate{WitnessPoint{{1.0}}}, tol);
    CHECK_FALSE(r.passed);
    CHECK(r.upper_margin == doctest::Approx(0.0));
  }
  SUBCASE("objective at exactly the threshold is rejected") {
    const VerificationReport r = verify_alternative_certificate(
        inst, 0.0, AlternativeCertificate{WitnessPoint{{0.0}}}, tol);
    CHECK_FALSE(r.passed);
    CHECK(r.objective_margin == doctest::Approx(0.0));
  }
  SUBCASE("one-sided band gives an infinite lower margin") {
    const RobustInstance os = scalar_instance(1.0, 1.0, 2.0, 0.0, std::nullopt, 0.25);
    const VerificationReport r = verify_alternative_certificate(
        os, 0.0, AlternativeCertificate{WitnessPoint{{-0.4}}}, tol);
    CHECK(r.passed);
    CHECK(std::isinf(r.lower_margin));
    CHECK(r.objective_margin == doctest::Approx(0.32));
  }
  SUBCASE("wrong dimension throws") {
    CHECK_THROWS_AS(verify_alternative_certificate(
                        inst, 0.0, AlternativeCertificate{WitnessPoint{{0.0, 0.0}}}, tol),
                    std::invalid_argument);
  }
}

TEST_CASE("multiplier verification reduces to aggregate nonnegativity") {
  const RobustInstance inst = scalar_instance(2.0, 0.0, 2.0, 0.0, -10.0, 1.0);

  AlternativeMultipliers m;            // lambda0 = 1, rest zero
  const VerificationReport nonneg =
      verify_alternative_certificate(inst, 0.0, AlternativeCertificate{m}, 1e-8);
  CHECK(nonneg.passed);  // x^2 >= 0
  CHECK(nonneg.objective_margin == doctest::Approx(0.0));
  CHECK(nonneg.min_eigenvalue == doctest::Approx(2.0));

  const VerificationReport shifted =
      verify_alternative_certificate(inst, -0.5, AlternativeCertificate{m}, 1e-8);
  CHECK_FALSE(shifted.passed);  // x^2 - 1/2 dips below zero
  CHECK(shifted.objective_margin == doctest::Approx(-0.5));

  SUBCASE("objective-free combination certifies an empty band") {
    // -x^2 constrained to [2, 3] is impossible; alpha - g = 2 + x^2 >= 2.
    const RobustInstance empty = scalar_instance(2.0, 0.0, -2.0, 0.0, 2.0, 3.0);
    AlternativeMultipliers inf_cert;
    inf_cert.lambda0 = 0.0;
    inf_cert.inner.lambda2 = 1.0;
    const VerificationReport r =
        verify_alternative_certificate(empty, 0.0, AlternativeCertificate{inf_cert}, 1e-8);
    CHECK(r.passed);
    CHECK(r.objective_margin == doctest::Approx(2.0));
  }
  SUBCASE("the zero multiplier certifies nothing") {
    AlternativeMultipliers zero;
    zero.lambda0 = 0.0;
    const VerificationReport r =
        verify_alternative_certificate(inst, 0.0, AlternativeCertificate{zero}, 1e-8);
    CHECK_FALSE(r.passed);
  }
  SUBCASE("unnormalized lambda0 is rejected") {
    AlternativeMultipliers bad;
    bad.lambda0 = 0.5;
    CHECK_THROWS_AS(verify_alternative_certificate(inst, 0.0, AlternativeCertificate{bad}, 1e-8),
                    std::invalid_argument);
  }
  SUBCASE("positive scaling preserves the aggregate sign") {
    const RobustInstance r1 = scalar_instance(1.0, 1.0, 2.0, 0.0, -10.0, 0.25);
    OptimalityCertificate base;
    base.lambda1 = 0.5;
    for (double t : {0.5, 2.0, 10.0}) {
      OptimalityCertificate scaled = base;
      scaled.lambda1 = t * base.lambda1;
      CHECK(global_nonneg(aggregate_quadratic(r1, 0.375, t, scaled)));
    }
  }
}

TEST_CASE("aggregate vanishes at a verified optimum") {
  // With gamma = -f(xbar), a passing certificate forces h(xbar) down to the
  // complementarity residuals.
  const RobustInstance inst = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  OptimalityCertificate cert;
  cert.lambda2 = 0.5;
  REQUIRE(verify_optimality_certificate(inst, {1.0}, cert, 1e-10).passed);
  const QuadraticFunction h = aggregate_quadratic(inst, -inst.objective.eval({1.0}), 1.0, cert);
  CHECK(std::abs(h.eval({1.0})) <= 1e-14);
  CHECK(global_nonneg(h));

  const RobustInstance band = band_instance(5);
  const Vector xbar = band_minimizer(5);
  OptimalityCertificate wrapped;
  wrapped.lambda1 = band_multiplier(5);
  wrapped.mu_beta = 1.0;
  wrapped.mu_alpha = -1.0;
  wrapped.delta_beta = -1.0;
  const QuadraticFunction hb = aggregate_quadratic(band, band_gamma(5), 1.0, wrapped);
  CHECK(std::abs(hb.eval(xbar)) <= 1e-12);
  CHECK(global_nonneg(hb));
}

TEST_CASE("interior point test respects both finite margins") {
  const RobustInstance one_sided = band_instance(5);
  CHECK(check_slater(one_sided, Vector(5, 0.0), 0.5));
  CHECK_FALSE(check_slater(one_sided, Vector(5, 0.0), 1.5));  // g_max = 0 vs beta - 1.5

  const RobustInstance two_sided = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  const Vector x0 = {std::sqrt(2.0)};  // band value is exactly 2
  CHECK(check_slater(two_sided, x0, 1.0));
  CHECK_FALSE(check_slater(two_sided, x0, 1.0000001));

  CHECK_THROWS_AS(check_slater(one_sided, Vector(5, 0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_slater(one_sided, Vector(5, 0.0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(check_slater(one_sided, Vector(4, 0.0), 0.5), std::invalid_argument);
}

}  // TEST_SUITE
