#include "robustqp/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "robustqp/certificates.hpp"
#include "robustqp/quadratic.hpp"
#include "support.hpp"

using namespace robustqp;
using testsupport::band_instance;
using testsupport::band_minimizer;
using testsupport::scalar_instance;

TEST_SUITE("oracle") {

TEST_CASE("grid mode recovers the one-variable closed forms") {
  // f = x^2/2 + x over x^2 <= 1/4: minimum -3/8 at the boundary -1/2
  const OracleResult r1 =
      brute_force_min(scalar_instance(1.0, 1.0, 2.0, 0.0, std::nullopt, 0.25), 2.0, 4001, 0, 0);
  REQUIRE(r1.feasible_found);
  CHECK(*r1.best_value == doctest::Approx(-0.375).epsilon(1e-9));
  CHECK((*r1.best_x)[0] == doctest::Approx(-0.5).epsilon(1e-6));

  // f = x^2/2 over x^2 in [1, 4]: minimum 1/2, tie between -1 and 1
  const OracleResult r2 =
      brute_force_min(scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0), 2.0, 4001, 0, 0);
  REQUIRE(r2.feasible_found);
  CHECK(*r2.best_value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK((*r2.best_x)[0] == doctest::Approx(-1.0).epsilon(1e-6));

  // interior minimum: f = x^2/2 + x over the wide band [-10, 4]
  const OracleResult r3 =
      brute_force_min(scalar_instance(1.0, 1.0, 2.0, 0.0, -10.0, 4.0), 2.0, 4001, 0, 0);
  REQUIRE(r3.feasible_found);
  CHECK(*r3.best_value == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK((*r3.best_x)[0] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("ties resolve to the lexicographically smallest minimizer") {
  // two-dimensional shell: f = (x^2 + y^2)/2 over norm^2 in [1, 4]
  RobustInstance inst;
  inst.objective.Q = SymmetricMatrix::identity(2);
  inst.objective.c = {0.0, 0.0};
  inst.constraint.B1 = SymmetricMatrix::identity(2).scaled(2.0);
  inst.constraint.B2 = SymmetricMatrix(2);
  inst.constraint.b1 = {0.0, 0.0};
  inst.constraint.b2 = {0.0, 0.0};
  inst.constraint.mu = {-1.0, 1.0};
  inst.constraint.delta = {-1.0, 1.0};
  inst.constraint.alpha = 1.0;
  inst.constraint.beta = 4.0;

  const OracleResult r = brute_force_min(inst, 2.0, 41, 0, 0);
  REQUIRE(r.feasible_found);
  CHECK(*r.best_value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK((*r.best_x)[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK((*r.best_x)[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("random-only mode approximates the five-dimensional band optimum") {
  const RobustInstance inst = band_instance(5);
  // 30^5 grid points would blow the cap, so this runs sampling only
  const OracleResult r = brute_force_min(inst, 1.0, 30, 200000, 3);
  REQUIRE(r.feasible_found);
  const double expected = -(std::sqrt(2.5) - 0.25);
  CHECK(std::abs(*r.best_value - expected) <= 1e-2);
  CHECK(is_robust_feasible(inst, *r.best_x, 1e-12).feasible);
  CHECK(*r.best_value >= expected - 1e-6);

  SUBCASE("identical seeds give identical results") {
    const OracleResult again = brute_force_min(inst, 1.0, 30, 200000, 3);
    CHECK(*again.best_value == *r.best_value);
    CHECK(*again.best_x == *r.best_x);
  }
}

TEST_CASE("infeasible instances are reported honestly") {
  const RobustInstance empty = scalar_instance(1.0, 0.0, 2.0, 0.0, std::nullopt, -1.0);
  const OracleResult r = brute_force_min(empty, 2.0, 101, 1000, 0);
  CHECK_FALSE(r.feasible_found);
  CHECK_FALSE(r.best_x.has_value());
  CHECK_FALSE(r.best_value.has_value());
  CHECK(r.samples_evaluated == 101 + 1000);
}

TEST_CASE("oracle never undercuts a verified optimum") {
  const RobustInstance r2 = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  OptimalityCertificate cert;
  cert.lambda2 = 0.5;
  REQUIRE(verify_optimality_certificate(r2, {1.0}, cert, 1e-8).passed);
  const OracleResult oracle = brute_force_min(r2, 2.0, 4001, 0, 0);
  CHECK(*oracle.best_value >= r2.objective.eval({1.0}) - 1e-6);

  const RobustInstance band = band_instance(5);
  const Vector xbar = band_minimizer(5);
  const OracleResult sampled = brute_force_min(band, 1.0, 0, 100000, 11);
  REQUIRE(sampled.feasible_found);
  CHECK(*sampled.best_value >= band.objective.eval(xbar) - 1e-6);
}

TEST_CASE("nested grid refinement never worsens the minimum") {
  const RobustInstance inst = scalar_instance(1.0, 0.0, 2.0, 0.0, 1.0, 4.0);
  double previous = 1e300;
  for (int grid : {11, 21, 41}) {
    const OracleResult r = brute_force_min(inst, 2.0, grid, 0, 0);
    REQUIRE(r.feasible_found);
    CHECK(*r.best_value <= previous + 1e-12);
    previous = *r.best_value;
  }
}

TEST_CASE("implication sampling matches the shifted-band ground truth") {
  const RobustInstance inst = band_instance(5);
  const double gamma = testsupport::band_gamma(5);

  const ImplicationCheck ok = sample_implication_check(inst, gamma, 100000, 0, 1.0);
  CHECK_FALSE(ok.violated);
  CHECK_FALSE(ok.vacuous);
  CHECK(ok.feasible_samples > 100);

  SUBCASE("lowering the shift by one produces a witness") {
    const ImplicationCheck bad = sample_implication_check(inst, gamma - 1.0, 100000, 0, 1.0);
    CHECK(bad.violated);
    REQUIRE(bad.witness.has_value());
    CHECK(is_robust_feasible(inst, *bad.witness, 0.0).feasible);
    CHECK(inst.objective.eval(*bad.witness) + gamma - 1.0 < -1e-9);
  }
  SUBCASE("empty feasible sets are flagged vacuous") {
    const RobustInstance empty = scalar_instance(1.0, 0.0, 2.0, 0.0, std::nullopt, -1.0);
    const ImplicationCheck v = sample_implication_check(empty, 0.0, 5000, 0);
    CHECK_FALSE(v.violated);
    CHECK(v.vacuous);
    CHECK(v.feasible_samples == 0);
  }
  SUBCASE("argument guards") {
    CHECK_THROWS_AS(sample_implication_check(inst, 0.0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_implication_check(inst, 0.0, 10, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_min(inst, -1.0, 11, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_min(inst, 1.0, -1, 0, 0), std::invalid_argument);
  }
}

}  // TEST_SUITE
