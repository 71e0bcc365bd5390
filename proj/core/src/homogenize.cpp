#include "robustqp/homogenize.hpp"

#include <stdexcept>

namespace robustqp {

namespace {

// [[block, col],[col', corner]]
SymmetricMatrix bordered(const SymmetricMatrix& block, const Vector& col, double corner) {
  const int n = block.size();
  SymmetricMatrix m(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.set(i, j, block(i, j));
    m.set(i, n, col[static_cast<std::size_t>(i)]);
  }
  m.set(n, n, corner);
  return m;
}

}  // namespace

SymmetricMatrix w_matrix(const UncertainConstraint& con, double delta, double lambda) {
  Vector col = con.b1;
  for (std::size_t i = 0; i < col.size(); ++i) col[i] += delta * con.b2[i];
  return bordered(con.B1, col, -2.0 * lambda);
}

HomogenizedSet homogenize(const RobustInstance& instance, double gamma) {
  instance.validate();
  const auto& con = instance.constraint;

  HomogenizedSet hs;
  hs.n = instance.n();
  hs.gamma = gamma;
  hs.H0 = bordered(instance.objective.Q, instance.objective.c, 2.0 * gamma);
  hs.W2 = bordered(con.B2, Vector(con.b2.size(), 0.0), 0.0);
  hs.W1beta = w_matrix(con, con.delta.lo, con.beta);
  hs.W2beta = w_matrix(con, con.delta.hi, con.beta);

  for (Corner corner : all_corners) {
    const auto [mu, delta] = corner_params(con, corner);
    SymmetricMatrix lift = w_matrix(con, delta, con.beta);
    lift.axpy(mu, hs.W2);
    hs.beta_corners.push_back(std::move(lift));
  }

  if (con.alpha.has_value()) {
    hs.W1alpha = w_matrix(con, con.delta.lo, *con.alpha);
    hs.W2alpha = w_matrix(con, con.delta.hi, *con.alpha);
    for (Corner corner : all_corners) {
      const auto [mu, delta] = corner_params(con, corner);
      SymmetricMatrix lift = w_matrix(con, delta, *con.alpha);
      lift.axpy(mu, hs.W2);
      hs.alpha_corners.push_back(std::move(lift));
    }
  }
  return hs;
}

double eval_homog(const SymmetricMatrix& m, const Vector& x, double t) {
  if (static_cast<int>(x.size()) + 1 != m.size())
    throw std::invalid_argument("eval_homog: dimension mismatch");
  Vector y = x;
  y.push_back(t);
  return 0.5 * dot(y, m.multiply(y));
}

WPencil build_w_pencil(const UncertainConstraint& con, double beta) {
  if (!(con.mu.lo < con.mu.hi))
    throw std::invalid_argument("build_w_pencil: degenerate mu interval");
  const double denom = con.mu.hi - con.mu.lo;
  const double intercept = (con.delta.lo * con.mu.hi - con.delta.hi * con.mu.lo) / denom;
  const double slope = (con.delta.hi - con.delta.lo) / denom;

  Vector col1 = con.b1;
  Vector col2(con.b2.size());
  for (std::size_t i = 0; i < col1.size(); ++i) {
    col1[i] += intercept * con.b2[i];
    col2[i] = slope * con.b2[i];
  }
  return {bordered(con.B1, col1, -2.0 * beta), bordered(con.B2, col2, 0.0)};
}

std::vector<SymmetricMatrix> omega_mu_generators(const HomogenizedSet& hs, bool two_sided) {
  std::vector<SymmetricMatrix> gens;
  gens.push_back(hs.H0);
  for (const auto& lift : hs.beta_corners) gens.push_back(lift);
  if (two_sided) {
    if (hs.alpha_corners.empty())
      throw std::invalid_argument("omega_mu_generators: two-sided list needs a finite alpha");
    for (const auto& lift : hs.alpha_corners) gens.push_back(lift.scaled(-1.0));
  }
  return gens;
}

}  // namespace robustqp
