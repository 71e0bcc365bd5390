#include "robustqp/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robustqp {

double QuadraticFunction::eval(const Vector& x) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument("QuadraticFunction::eval: dimension mismatch");
  return 0.5 * dot(x, Q.multiply(x)) + dot(c, x) + r;
}

void RobustInstance::validate() const {
  const int dim = objective.dim();
  if (static_cast<int>(objective.c.size()) != dim)
    throw std::invalid_argument("instance: objective dimensions disagree");
  if (!std::isfinite(objective.r)) throw std::invalid_argument("instance: non-finite objective offset");
  const auto& con = constraint;
  if (con.B1.size() != dim || con.B2.size() != dim ||
      static_cast<int>(con.b1.size()) != dim || static_cast<int>(con.b2.size()) != dim)
    throw std::invalid_argument("instance: constraint dimensions disagree with objective");
  if (!(con.mu.lo <= con.mu.hi)) throw std::invalid_argument("instance: mu interval reversed");
  if (!(con.delta.lo <= con.delta.hi)) throw std::invalid_argument("instance: delta interval reversed");
  if (!std::isfinite(con.beta)) throw std::invalid_argument("instance: non-finite beta");
  if (con.alpha.has_value()) {
    if (!std::isfinite(*con.alpha)) throw std::invalid_argument("instance: non-finite alpha");
    if (!(*con.alpha < con.beta)) throw std::invalid_argument("instance: alpha < beta required");
  }
}

std::pair<double, double> corner_params(const UncertainConstraint& con, Corner corner) {
  switch (corner) {
    case Corner::mu1_delta1: return {con.mu.lo, con.delta.lo};
    case Corner::mu1_delta2: return {con.mu.lo, con.delta.hi};
    case Corner::mu2_delta1: return {con.mu.hi, con.delta.lo};
    case Corner::mu2_delta2: return {con.mu.hi, con.delta.hi};
  }
  throw std::invalid_argument("corner_params: bad corner");
}

QuadraticFunction constraint_at(const UncertainConstraint& con, double mu, double delta) {
  if (mu < con.mu.lo || mu > con.mu.hi || delta < con.delta.lo || delta > con.delta.hi)
    throw std::invalid_argument("constraint_at: (mu, delta) outside the uncertainty rectangle");
  QuadraticFunction g;
  g.Q = con.B1;
  g.Q.axpy(mu, con.B2);
  g.c = con.b1;
  for (std::size_t i = 0; i < g.c.size(); ++i) g.c[i] += delta * con.b2[i];
  g.r = 0.0;
  return g;
}

std::array<double, 4> corner_values(const UncertainConstraint& con, const Vector& x) {
  if (static_cast<int>(x.size()) != con.dim())
    throw std::invalid_argument("corner_values: dimension mismatch");
  // g is affine in (mu, delta): g = base + mu*quad2 + delta*lin2
  const double base = 0.5 * dot(x, con.B1.multiply(x)) + dot(con.b1, x);
  const double quad2 = 0.5 * dot(x, con.B2.multiply(x));
  const double lin2 = dot(con.b2, x);

  std::array<double, 4> out{};
  for (std::size_t k = 0; k < all_corners.size(); ++k) {
    const auto [mu, delta] = corner_params(con, all_corners[k]);
    out[k] = base + mu * quad2 + delta * lin2;
  }
  return out;
}

Range robust_range(const UncertainConstraint& con, const Vector& x) {
  const auto vals = corner_values(con, x);
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return {*lo, *hi};
}

FeasibilityReport is_robust_feasible(const RobustInstance& instance, const Vector& x, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_robust_feasible: negative tolerance");
  const Range range = robust_range(instance.constraint, x);
  FeasibilityReport report;
  report.upper_margin = instance.constraint.beta - range.hi;
  report.lower_margin = instance.constraint.alpha.has_value()
                            ? range.lo - *instance.constraint.alpha
                            : std::numeric_limits<double>::infinity();
  report.feasible = report.upper_margin >= -tol && report.lower_margin >= -tol;
  return report;
}

}  // namespace robustqp
