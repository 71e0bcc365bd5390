#include "robustqp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace robustqp {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("SymmetricMatrix: negative dimension");
  a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  SymmetricMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.size(); ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
  return m;
}

SymmetricMatrix SymmetricMatrix::from_rows(const std::vector<Vector>& rows) {
  const int n = static_cast<int>(rows.size());
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw std::invalid_argument("SymmetricMatrix: row length differs from row count");
  }
  double asym = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double vij = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!std::isfinite(vij)) throw std::invalid_argument("SymmetricMatrix: non-finite entry");
      if (j >= i) {
        const double vji = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        asym = std::max(asym, std::fabs(vij - vji));
        const double v = (i == j) ? vij : 0.5 * (vij + vji);
        m.set(i, j, v);
      }
    }
  }
  m.asym_ = asym;
  return m;
}

void SymmetricMatrix::set(int i, int j, double v) {
  a_[static_cast<std::size_t>(i) * n_ + j] = v;
  a_[static_cast<std::size_t>(j) * n_ + i] = v;
}

void SymmetricMatrix::add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

double SymmetricMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double SymmetricMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymmetricMatrix& SymmetricMatrix::axpy(double t, const SymmetricMatrix& other) {
  if (other.n_ != n_) throw std::invalid_argument("axpy: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += t * other.a_[k];
  return *this;
}

SymmetricMatrix SymmetricMatrix::scaled(double t) const {
  SymmetricMatrix m(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = t * a_[k];
  return m;
}

Vector SymmetricMatrix::multiply(const Vector& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("multiply: dimension mismatch");
  Vector y(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = a_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = 0; j < n_; ++j) s += row[j] * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

SymmetricMatrix principal_block(const SymmetricMatrix& m, int k) {
  if (k < 0 || k > m.size()) throw std::invalid_argument("principal_block: bad block size");
  SymmetricMatrix block(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) block.set(i, j, m(i, j));
  return block;
}

namespace {

double offdiag_frobenius(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = a[static_cast<std::size_t>(i) * n + j];
      s += 2.0 * v * v;
    }
  return std::sqrt(s);
}

}  // namespace

EigenSystem sym_eigen(const SymmetricMatrix& m) {
  const int n = m.size();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("sym_eigen: non-finite entry");
      a[static_cast<std::size_t>(i) * n + j] = v;
    }

  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  const double target = 1e-14 * m.frobenius();
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_frobenius(a, n) <= target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<std::size_t>(p) * n + q];
        if (apq == 0.0) continue;
        const double app = a[static_cast<std::size_t>(p) * n + p];
        const double aqq = a[static_cast<std::size_t>(q) * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a[static_cast<std::size_t>(k) * n + p];
          const double akq = a[static_cast<std::size_t>(k) * n + q];
          a[static_cast<std::size_t>(k) * n + p] = c * akp - s * akq;
          a[static_cast<std::size_t>(k) * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[static_cast<std::size_t>(p) * n + k];
          const double aqk = a[static_cast<std::size_t>(q) * n + k];
          a[static_cast<std::size_t>(p) * n + k] = c * apk - s * aqk;
          a[static_cast<std::size_t>(q) * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[static_cast<std::size_t>(k) * n + p];
          const double vkq = v[static_cast<std::size_t>(k) * n + q];
          v[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
          v[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a[static_cast<std::size_t>(i) * n + i] < a[static_cast<std::size_t>(j) * n + j];
  });

  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    out.values[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(src) * n + src];
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(j) * n + i] = v[static_cast<std::size_t>(i) * n + src];
  }
  return out;
}

double min_eigenvalue(const SymmetricMatrix& m) {
  if (m.size() == 0) return 0.0;
  return sym_eigen(m).values.front();
}

bool is_psd(const SymmetricMatrix& m, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: negative tolerance");
  return min_eigenvalue(m) >= -tol * (1.0 + m.max_abs_entry());
}

LeastSquaresSolution least_squares_solve(const std::vector<Vector>& columns, const Vector& rhs) {
  const int k = static_cast<int>(columns.size());
  if (k == 0) throw std::invalid_argument("least_squares_solve: no columns");
  const std::size_t m = rhs.size();
  for (const auto& col : columns)
    if (col.size() != m) throw std::invalid_argument("least_squares_solve: dimension mismatch");

  // Normal equations through the Gram matrix; with k tiny this is exact
  // enough, and the eigen-based pseudo-inverse gives the minimal-norm
  // solution in the rank-deficient case.
  SymmetricMatrix gram(k);
  Vector b(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j)
      gram.set(i, j, dot(columns[static_cast<std::size_t>(i)], columns[static_cast<std::size_t>(j)]));
    b[static_cast<std::size_t>(i)] = dot(columns[static_cast<std::size_t>(i)], rhs);
  }

  const EigenSystem es = sym_eigen(gram);
  const double lmax = es.values.empty() ? 0.0 : es.values.back();
  const double cut = lmax * 1e-12;

  Vector coeff(static_cast<std::size_t>(k), 0.0);
  if (lmax > 0.0) {
    for (int j = 0; j < k; ++j) {
      const double lam = es.values[static_cast<std::size_t>(j)];
      if (lam <= cut) continue;
      double z = 0.0;
      for (int i = 0; i < k; ++i)
        z += es.vectors[static_cast<std::size_t>(j) * k + i] * b[static_cast<std::size_t>(i)];
      z /= lam;
      for (int i = 0; i < k; ++i)
        coeff[static_cast<std::size_t>(i)] += z * es.vectors[static_cast<std::size_t>(j) * k + i];
    }
  }

  Vector resid = rhs;
  for (int i = 0; i < k; ++i)
    for (std::size_t r = 0; r < m; ++r)
      resid[r] -= coeff[static_cast<std::size_t>(i)] * columns[static_cast<std::size_t>(i)][r];
  return {coeff, norm2(resid)};
}

double convex_quadratic_infimum(const SymmetricMatrix& q, const Vector& c, double r, double tol) {
  if (static_cast<int>(c.size()) != q.size())
    throw std::invalid_argument("convex_quadratic_infimum: dimension mismatch");
  const double neg_inf = -std::numeric_limits<double>::infinity();

  const EigenSystem es = sym_eigen(q);
  const int n = q.size();
  const double cut = tol * (1.0 + q.max_abs_entry());
  if (n > 0 && es.values.front() < -cut) return neg_inf;

  // c must not leave range(Q): project onto the (near) null space.
  double null_mass = 0.0;
  double quad = 0.0;
  for (int j = 0; j < n; ++j) {
    double z = 0.0;
    for (int i = 0; i < n; ++i)
      z += es.vectors[static_cast<std::size_t>(j) * n + i] * c[static_cast<std::size_t>(i)];
    if (es.values[static_cast<std::size_t>(j)] <= cut) {
      null_mass += z * z;
    } else {
      quad += z * z / es.values[static_cast<std::size_t>(j)];
    }
  }
  if (std::sqrt(null_mass) > 1e-8 * (1.0 + norm2(c))) return neg_inf;
  return r - 0.5 * quad;
}

Vector uniform_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("uniform_grid: count must be positive");
  if (count == 1 || lo == hi) return Vector(static_cast<std::size_t>(count), lo);
  Vector g(static_cast<std::size_t>(count));
  const double diff = hi - lo;
  g.front() = lo;
  g.back() = hi;
  // (diff * k) / (count - 1): scaling k and count-1 by the same power of two
  // leaves the quotient unchanged, which is what makes refinement exact.
  for (int k = 1; k < count - 1; ++k)
    g[static_cast<std::size_t>(k)] = lo + (diff * k) / (count - 1);
  return g;
}

}  // namespace robustqp
