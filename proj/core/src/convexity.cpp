#include "robustqp/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "robustqp/rng.hpp"

namespace robustqp {

ScaledFamilyReport check_scaled_family(const std::vector<SymmetricMatrix>& family, double tol) {
  ScaledFamilyReport report;
  if (family.empty()) {
    report.reason = "empty family";
    return report;
  }
  const int n = family.front().size();
  for (const auto& m : family)
    if (m.size() != n) throw std::invalid_argument("check_scaled_family: mixed dimensions");

  int anchor = -1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family[i];
    if (min_eigenvalue(m) > tol * (1.0 + m.max_abs_entry())) {
      anchor = static_cast<int>(i);
      break;
    }
  }
  if (anchor < 0) {
    report.reason = "no positive definite anchor";
    return report;
  }
  report.a0_index = anchor;

  const auto& a0 = family[static_cast<std::size_t>(anchor)];
  double a0_dot = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a0_dot += a0(i, j) * a0(i, j);

  const int m_count = static_cast<int>(family.size()) - 1;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (static_cast<int>(k) == anchor) continue;
    const auto& mk = family[k];
    double proj = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) proj += mk(i, j) * a0(i, j);
    const double rho = proj / a0_dot;  // Frobenius projection onto the anchor
    report.rho.push_back(rho);

    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dev = std::max(dev, std::fabs(mk(i, j) - rho * a0(i, j)));
    const double scale = 1.0 + mk.max_abs_entry() + std::fabs(rho) * a0.max_abs_entry();
    if (dev > tol * scale) {
      report.reason = "member " + std::to_string(k) + " is not a multiple of the anchor";
      return report;
    }
  }

  if (n < m_count + 1) {
    report.reason = "dimension too small: need n >= m + 1";
    return report;
  }
  report.passes = true;
  report.reason = "scaled family with positive definite anchor";
  return report;
}

PdCombination verify_pd_combination(const std::vector<SymmetricMatrix>& mats,
                                    const Vector& coeffs) {
  if (mats.empty()) throw std::invalid_argument("verify_pd_combination: no matrices");
  if (mats.size() != coeffs.size())
    throw std::invalid_argument("verify_pd_combination: coefficient count mismatch");
  SymmetricMatrix sum(mats.front().size());
  for (std::size_t i = 0; i < mats.size(); ++i) sum.axpy(coeffs[i], mats[i]);
  PdCombination out;
  out.min_eigenvalue = min_eigenvalue(sum);
  out.positive_definite = out.min_eigenvalue > 1e-12 * (1.0 + sum.max_abs_entry());
  return out;
}

std::optional<Vector> find_pd_combination(const std::vector<SymmetricMatrix>& mats,
                                          int direction_count, std::uint64_t seed) {
  if (mats.empty()) throw std::invalid_argument("find_pd_combination: no matrices");
  const int k = static_cast<int>(mats.size());

  auto hit = [&](const Vector& c) { return verify_pd_combination(mats, c).positive_definite; };

  // stage 1: sign patterns
  if (k <= 20) {
    for (std::uint64_t bits = 0; bits < (1ull << k); ++bits) {
      Vector c(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? -1.0 : 1.0;
      if (hit(c)) return c;
    }
  }

  // stage 2: small magnitude profiles; catches combinations whose
  // coefficients differ in size, e.g. one large negative weight against two
  // small ones, which pure sign patterns cannot express
  if (k <= 5) {
    static constexpr double levels[9] = {0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0};
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= 9;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      std::uint64_t rest = idx;
      Vector c(static_cast<std::size_t>(k));
      for (int i = k - 1; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = levels[rest % 9];
        rest /= 9;
      }
      if (hit(c)) return c;
    }
  }

  // stage 3: seeded random directions on the unit sphere
  Rng rng(seed);
  for (int t = 0; t < direction_count; ++t) {
    Vector c(static_cast<std::size_t>(k));
    double nrm = 0.0;
    for (auto& v : c) {
      v = rng.normal();
      nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    for (auto& v : c) v /= nrm;
    if (hit(c)) return c;
  }
  return std::nullopt;
}

namespace {

constexpr double kBoxRadius = 5.0;
constexpr double kRelTol = 1e-3;
constexpr std::size_t kCacheCap = 20'000'000;  // cached image doubles
constexpr std::size_t kRefineStarts = 8;

// Preimage search for a quadratic map F_i(x) = x'Q_i x/2 + c_i'x over the
// box [-5,5]^d: full grid scan (image values cached when small enough so
// repeated midpoint queries stay cheap), then damped Gauss-Newton from the
// best grid cells.
class PreimageSearcher {
 public:
  PreimageSearcher(const std::vector<std::pair<SymmetricMatrix, Vector>>& parts, int resolution)
      : parts_(parts),
        dim_(parts.front().first.size()),
        k_(static_cast<int>(parts.size())),
        axis_(uniform_grid(-kBoxRadius, kBoxRadius, resolution)) {
    point_count_ = 1;
    for (int i = 0; i < dim_; ++i) point_count_ *= static_cast<std::size_t>(axis_.size());
    if (point_count_ * static_cast<std::size_t>(k_) <= kCacheCap) {
      cache_.reserve(point_count_ * static_cast<std::size_t>(k_));
      Vector x(static_cast<std::size_t>(dim_));
      Vector f(static_cast<std::size_t>(k_));
      for (std::size_t p = 0; p < point_count_; ++p) {
        decode(p, x);
        images(x, f);
        cache_.insert(cache_.end(), f.begin(), f.end());
      }
    }
  }

  struct Outcome {
    bool attained = false;
    double best_mismatch = 0.0;
    Vector best_point;
  };

  Outcome attainable(const Vector& target) const {
    std::vector<std::pair<double, std::size_t>> starts;  // (mismatch, point index)
    Vector x(static_cast<std::size_t>(dim_));
    Vector f(static_cast<std::size_t>(k_));

    Outcome out;
    out.best_mismatch = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < point_count_; ++p) {
      double mis;
      if (!cache_.empty()) {
        mis = mismatch_from(&cache_[p * static_cast<std::size_t>(k_)], target);
      } else {
        decode(p, x);
        images(x, f);
        mis = mismatch_from(f.data(), target);
      }
      if (mis < out.best_mismatch) {
        out.best_mismatch = mis;
        out.best_point.assign(static_cast<std::size_t>(dim_), 0.0);
        decode(p, out.best_point);
      }
      if (mis <= kRelTol) {
        out.attained = true;
        return out;
      }
      if (starts.size() < kRefineStarts) {
        starts.emplace_back(mis, p);
        std::push_heap(starts.begin(), starts.end());
      } else if (mis < starts.front().first) {
        std::pop_heap(starts.begin(), starts.end());
        starts.back() = {mis, p};
        std::push_heap(starts.begin(), starts.end());
      }
    }

    std::sort(starts.begin(), starts.end());
    for (const auto& [mis, p] : starts) {
      decode(p, x);
      const auto [reached, point] = gauss_newton(x, target);
      if (reached < out.best_mismatch) {
        out.best_mismatch = reached;
        out.best_point = point;
      }
      if (reached <= kRelTol) {
        out.attained = true;
        return out;
      }
    }
    return out;
  }

 private:
  void decode(std::size_t p, Vector& x) const {
    const std::size_t res = axis_.size();
    for (int i = dim_ - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = axis_[p % res];
      p /= res;
    }
  }

  void images(const Vector& x, Vector& f) const {
    for (int i = 0; i < k_; ++i) {
      const auto& [q, c] = parts_[static_cast<std::size_t>(i)];
      f[static_cast<std::size_t>(i)] = 0.5 * dot(x, q.multiply(x)) + dot(c, x);
    }
  }

  double mismatch_from(const double* f, const Vector& target) const {
    double worst = 0.0;
    for (int i = 0; i < k_; ++i) {
      const double scale = 1.0 + std::fabs(target[static_cast<std::size_t>(i)]);
      worst = std::max(worst, std::fabs(f[i] - target[static_cast<std::size_t>(i)]) / scale);
    }
    return worst;
  }

  std::pair<double, Vector> gauss_newton(Vector x, const Vector& target) const {
    Vector f(static_cast<std::size_t>(k_));
    auto residual = [&](const Vector& at, Vector& r) {
      images(at, f);
      double ssq = 0.0;
      for (int i = 0; i < k_; ++i) {
        const double scale = 1.0 + std::fabs(target[static_cast<std::size_t>(i)]);
        r[static_cast<std::size_t>(i)] = (f[static_cast<std::size_t>(i)] -
                                          target[static_cast<std::size_t>(i)]) / scale;
        ssq += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
      }
      return ssq;
    };

    Vector r(static_cast<std::size_t>(k_));
    double value = residual(x, r);
    double best_mis = mismatch_of(r);
    Vector best_x = x;

    for (int iter = 0; iter < 80 && best_mis > kRelTol; ++iter) {
      // rows of the scaled Jacobian: (Q_i x + c_i) / (1 + |target_i|)
      std::vector<Vector> cols(static_cast<std::size_t>(dim_),
                               Vector(static_cast<std::size_t>(k_)));
      for (int i = 0; i < k_; ++i) {
        const auto& [q, c] = parts_[static_cast<std::size_t>(i)];
        Vector grad = q.multiply(x);
        const double scale = 1.0 + std::fabs(target[static_cast<std::size_t>(i)]);
        for (int j = 0; j < dim_; ++j)
          cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              (grad[static_cast<std::size_t>(j)] + c[static_cast<std::size_t>(j)]) / scale;
      }
      Vector neg_r = r;
      for (auto& v : neg_r) v = -v;
      const Vector step = least_squares_solve(cols, neg_r).coefficients;

      double t = 1.0;
      bool improved = false;
      Vector trial(static_cast<std::size_t>(dim_));
      Vector rt(static_cast<std::size_t>(k_));
      for (int h = 0; h < 30; ++h) {
        for (int j = 0; j < dim_; ++j)
          trial[static_cast<std::size_t>(j)] =
              x[static_cast<std::size_t>(j)] + t * step[static_cast<std::size_t>(j)];
        const double vt = residual(trial, rt);
        if (vt < value) {
          x = trial;
          r = rt;
          value = vt;
          improved = true;
          break;
        }
        t *= 0.5;
      }
      if (!improved) break;
      const double mis = mismatch_of(r);
      if (mis < best_mis) {
        best_mis = mis;
        best_x = x;
      }
    }
    return {best_mis, best_x};
  }

  static double mismatch_of(const Vector& r) {
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::fabs(v));
    return worst;
  }

  const std::vector<std::pair<SymmetricMatrix, Vector>>& parts_;
  int dim_;
  int k_;
  Vector axis_;
  std::size_t point_count_ = 0;
  std::vector<double> cache_;
};

// Sign-pattern corners first (so structured witnesses surface with small
// indices and deterministically), then seeded fill-in samples in [-2,2]^d.
std::vector<Vector> sample_points(int dim, std::size_t minimum, Rng& rng) {
  std::vector<Vector> points;
  if (dim <= 8) {
    for (std::uint64_t bits = 0; bits < (1ull << dim); ++bits) {
      Vector p(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i)
        p[static_cast<std::size_t>(i)] = (bits >> (dim - 1 - i)) & 1 ? 1.0 : -1.0;
      points.push_back(std::move(p));
    }
  }
  while (points.size() < minimum) {
    Vector p(static_cast<std::size_t>(dim));
    for (auto& v : p) v = rng.uniform(-2.0, 2.0);
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace

ImageConvexityResult falsify_image_convexity(const std::vector<SymmetricMatrix>& mats,
                                             int dim_limit, int grid_resolution, int trials,
                                             std::uint64_t seed) {
  if (mats.empty()) throw std::invalid_argument("falsify_image_convexity: no matrices");
  const int dim = mats.front().size();
  if (dim > dim_limit)
    throw std::invalid_argument(
        "falsify_image_convexity: dimension exceeds dim_limit (grid blowup); raise dim_limit "
        "and lower the resolution deliberately");
  if (grid_resolution < 11)
    throw std::invalid_argument("falsify_image_convexity: resolution must be at least 11");
  for (const auto& m : mats)
    if (m.size() != dim) throw std::invalid_argument("falsify_image_convexity: mixed dimensions");

  // searcher evaluates x'Qx/2 + c'x, so double the forms to search y'My
  std::vector<std::pair<SymmetricMatrix, Vector>> parts;
  parts.reserve(mats.size());
  for (const auto& m : mats)
    parts.emplace_back(m.scaled(2.0), Vector(static_cast<std::size_t>(dim), 0.0));
  PreimageSearcher searcher(parts, grid_resolution);

  auto image_of = [&](const Vector& y) {
    Vector img(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) img[i] = dot(y, mats[i].multiply(y));
    return img;
  };

  // enough points that i<j pairs cover the requested trial count
  std::size_t want = 2;
  while (want * (want - 1) / 2 < static_cast<std::size_t>(trials)) ++want;
  Rng rng(seed);
  const auto points = sample_points(dim, want, rng);

  ImageConvexityResult result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (result.pairs_tested >= trials) return result;
      ++result.pairs_tested;

      const Vector img1 = image_of(points[i]);
      const Vector img2 = image_of(points[j]);
      Vector mid(img1.size());
      for (std::size_t c = 0; c < mid.size(); ++c) mid[c] = 0.5 * (img1[c] + img2[c]);

      const auto outcome = searcher.attainable(mid);
      if (!outcome.attained) {
        ConvexityWitness w;
        w.y1 = points[i];
        w.y2 = points[j];
        w.image1 = img1;
        w.image2 = img2;
        w.midpoint = mid;
        w.best_mismatch = outcome.best_mismatch;
        w.pair_index = result.pairs_tested;
        result.witness = std::move(w);
        return result;
      }
    }
  }
  return result;
}

SumIdentityResult falsify_ramana_goldman(
    const std::vector<std::pair<SymmetricMatrix, Vector>>& map_parts, int trials,
    std::uint64_t seed) {
  if (map_parts.empty()) throw std::invalid_argument("falsify_ramana_goldman: empty map");
  const int dim = map_parts.front().first.size();
  if (dim > 4) throw std::invalid_argument("falsify_ramana_goldman: dimension above 4");
  for (const auto& [q, c] : map_parts)
    if (q.size() != dim || static_cast<int>(c.size()) != dim)
      throw std::invalid_argument("falsify_ramana_goldman: mixed dimensions");

  PreimageSearcher searcher(map_parts, 101);

  auto value_of = [&](const Vector& x, bool homogeneous) {
    Vector img(map_parts.size());
    for (std::size_t i = 0; i < map_parts.size(); ++i) {
      const auto& [q, c] = map_parts[i];
      img[i] = 0.5 * dot(x, q.multiply(x)) + (homogeneous ? 0.0 : dot(c, x));
    }
    return img;
  };

  std::size_t want = 2;
  while (want * want < static_cast<std::size_t>(trials)) ++want;
  Rng rng(seed);
  const auto points = sample_points(dim, want, rng);

  SumIdentityResult result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (result.pairs_tested >= trials) return result;
      ++result.pairs_tested;

      const Vector u = value_of(points[i], false);
      const Vector v = value_of(points[j], true);
      Vector sum(u.size());
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] = u[c] + v[c];

      const auto outcome = searcher.attainable(sum);
      if (!outcome.attained) {
        SumIdentityViolation violation;
        violation.x = points[i];
        violation.y = points[j];
        violation.u = u;
        violation.v = v;
        violation.sum = sum;
        violation.best_mismatch = outcome.best_mismatch;
        violation.pair_index = result.pairs_tested;
        result.violation = std::move(violation);
        return result;
      }
    }
  }
  return result;
}

}  // namespace robustqp
