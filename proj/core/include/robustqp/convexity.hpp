#pragma once

// Checkable sufficient conditions for joint-range convexity of a family of
// quadratic forms (scaled-family structure, existence of a positive definite
// combination) plus sampling-based falsifiers. The falsifiers are one-sided:
// they can disprove convexity or the image-sum identity on concrete data, a
// clean NO_WITNESS outcome proves nothing.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustqp/linalg.hpp"

namespace robustqp {

struct ScaledFamilyReport {
  bool passes = false;
  std::optional<int> a0_index;  // anchor position in the input list
  std::vector<double> rho;      // scale per non-anchor member, list order
  std::string reason;
};

// Every member must be a scalar multiple of a common anchor (the first
// positive definite member in list order), and the ambient dimension must
// satisfy n >= m + 1 where m counts the non-anchor members.
ScaledFamilyReport check_scaled_family(const std::vector<SymmetricMatrix>& family,
                                       double tol = 1e-9);

struct PdCombination {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
};

PdCombination verify_pd_combination(const std::vector<SymmetricMatrix>& mats,
                                    const Vector& coeffs);

// Deterministic sweep for coefficients making sum_i c_i M_i positive
// definite: all +-1 sign patterns first, then small magnitude profiles from
// {0,+-1,+-2,+-4,+-8} (k <= 5 members), then direction_count seeded random
// unit directions. Returns the first hit in sweep order.
std::optional<Vector> find_pd_combination(const std::vector<SymmetricMatrix>& mats,
                                          int direction_count = 10000,
                                          std::uint64_t seed = 0);

struct ConvexityWitness {
  Vector y1, y2;          // sampled points
  Vector image1, image2;  // their images under the quadratic map
  Vector midpoint;        // midpoint no preimage search could attain
  double best_mismatch = 0.0;
  int pair_index = 0;
};

struct ImageConvexityResult {
  std::optional<ConvexityWitness> witness;  // empty means NO_WITNESS
  int pairs_tested = 0;
};

// Samples pairs of image points of y -> (y'M_1 y, ..., y'M_k y), forms their
// midpoints and hunts for preimages over [-5,5]^dim (grid scan at the given
// resolution, then damped Gauss-Newton polish from the best grid cells). A
// midpoint missed by 1e-3 relative in every component becomes a witness.
ImageConvexityResult falsify_image_convexity(const std::vector<SymmetricMatrix>& mats,
                                             int dim_limit = 4, int grid_resolution = 11,
                                             int trials = 20, std::uint64_t seed = 0);

struct SumIdentityViolation {
  Vector x, y;       // u = F(x), v = F_hom(y)
  Vector u, v, sum;  // sum = u + v, not attained by F
  double best_mismatch = 0.0;
  int pair_index = 0;
};

struct SumIdentityResult {
  std::optional<SumIdentityViolation> violation;  // empty means NO_WITNESS
  int pairs_tested = 0;
};

// Ramana-Goldman style check for the map F_i(x) = x'Q_i x/2 + c_i'x: the
// image is convex iff it absorbs its homogeneous image, so sampled sums
// F(x) + F_hom(y) must stay attainable by F.
SumIdentityResult falsify_ramana_goldman(
    const std::vector<std::pair<SymmetricMatrix, Vector>>& map_parts, int trials,
    std::uint64_t seed);

}  // namespace robustqp
