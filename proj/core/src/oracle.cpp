#include "robustqp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robustqp/linalg.hpp"
#include "robustqp/rng.hpp"

namespace robustqp {

namespace {

constexpr double kGridCap = 1e7;       // grid mode limit on total points
constexpr double kRefineMargin = -1e-12;  // feasibility slack during refinement only

bool feasible_within(const RobustInstance& instance, const Vector& x, double margin) {
  const FeasibilityReport rep = is_robust_feasible(instance, x, 0.0);
  return rep.upper_margin >= margin && rep.lower_margin >= margin;
}

}  // namespace

OracleResult brute_force_min(const RobustInstance& instance, double box_halfwidth,
                             int grid_per_dim, int random_extra, std::uint64_t seed) {
  instance.validate();
  if (!(box_halfwidth > 0.0)) {
    throw std::invalid_argument("box half-width must be positive");
  }
  if (grid_per_dim < 0 || random_extra < 0) {
    throw std::invalid_argument("grid and sample counts must be nonnegative");
  }
  const int n = instance.n();
  const std::size_t un = static_cast<std::size_t>(n);

  OracleResult result;
  Vector best_x;
  double best_value = 0.0;

  const auto consider = [&](const Vector& x) {
    result.samples_evaluated += 1;
    if (!feasible_within(instance, x, 0.0)) return;
    const double value = instance.objective.eval(x);
    if (!result.feasible_found || value < best_value ||
        (value == best_value && std::lexicographical_compare(x.begin(), x.end(),
                                                             best_x.begin(), best_x.end()))) {
      result.feasible_found = true;
      best_value = value;
      best_x = x;
    }
  };

  const bool grid_mode =
      grid_per_dim >= 1 && std::pow(static_cast<double>(grid_per_dim), n) <= kGridCap;
  if (grid_mode) {
    const Vector axis = grid_per_dim == 1 ? Vector{0.0}
                                          : uniform_grid(-box_halfwidth, box_halfwidth,
                                                         grid_per_dim);
    std::vector<int> idx(un, 0);
    Vector x(un, 0.0);
    while (true) {
      for (std::size_t j = 0; j < un; ++j) x[j] = axis[static_cast<std::size_t>(idx[j])];
      consider(x);
      int j = n - 1;
      while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == static_cast<int>(axis.size())) {
        idx[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j < 0) break;
    }
  }

  Rng rng(seed);
  Vector sample(un, 0.0);
  for (int s = 0; s < random_extra; ++s) {
    for (double& v : sample) v = rng.uniform(-box_halfwidth, box_halfwidth);
    consider(sample);
  }

  if (!result.feasible_found) return result;

  // Refinement accepts only strict improvements, so the sampled tie-break is
  // preserved whenever the incumbent is already locally minimal.
  double step = box_halfwidth / 8.0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool improved = false;
    for (std::size_t j = 0; j < un; ++j) {
      for (double dir : {-1.0, 1.0}) {
        Vector y = best_x;
        y[j] += dir * step;
        result.samples_evaluated += 1;
        const double value = instance.objective.eval(y);
        if (value < best_value && feasible_within(instance, y, kRefineMargin)) {
          best_x = y;
          best_value = value;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  // Shrinking-box resampling dislodges incumbents stuck against a curved
  // feasibility boundary, where axis-aligned descent stalls.
  double radius = box_halfwidth / 2.0;
  Vector y(un, 0.0);
  for (int round = 0; round < 40; ++round) {
    for (int s = 0; s < 400; ++s) {
      for (std::size_t j = 0; j < un; ++j) y[j] = best_x[j] + rng.uniform(-radius, radius);
      result.samples_evaluated += 1;
      const double value = instance.objective.eval(y);
      if (value < best_value && feasible_within(instance, y, kRefineMargin)) {
        best_x = y;
        best_value = value;
      }
    }
    radius *= 0.7;
  }

  result.best_x = best_x;
  result.best_value = best_value;
  return result;
}

ImplicationCheck sample_implication_check(const RobustInstance& instance, double gamma,
                                          int samples, std::uint64_t seed,
                                          double box_halfwidth) {
  instance.validate();
  if (samples <= 0) {
    throw std::invalid_argument("sample count must be positive");
  }
  if (!(box_halfwidth > 0.0)) {
    throw std::invalid_argument("box half-width must be positive");
  }

  ImplicationCheck check;
  Rng rng(seed);
  Vector x(static_cast<std::size_t>(instance.n()), 0.0);
  for (int s = 0; s < samples; ++s) {
    for (double& v : x) v = rng.uniform(-box_halfwidth, box_halfwidth);
    if (!feasible_within(instance, x, 0.0)) continue;
    check.feasible_samples += 1;
    if (instance.objective.eval(x) + gamma < -1e-9) {
      check.violated = true;
      check.witness = x;
      return check;
    }
  }
  check.vacuous = check.feasible_samples == 0;
  return check;
}

}  // namespace robustqp
