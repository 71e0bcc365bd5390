#pragma once

// Dense symmetric linear algebra on small matrices: Jacobi eigendecomposition,
// PSD tests, minimal-norm least squares, and the exact global infimum of a
// convex quadratic. Everything is deterministic; sizes of interest are tiny
// (n below a few hundred), so O(n^3) with no blocking is fine.

#include <string>
#include <vector>

namespace robustqp {

using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double max_abs(const Vector& a);

class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n);
  static SymmetricMatrix identity(int n);
  static SymmetricMatrix diagonal(const Vector& d);

  // Builds from square row data, symmetrizing via (M + M^T)/2 and recording
  // the largest |M[i][j] - M[j][i]| encountered. Rejects non-finite entries.
  static SymmetricMatrix from_rows(const std::vector<Vector>& rows);

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  double max_abs_entry() const;
  double max_asymmetry() const { return asym_; }
  double frobenius() const;

  // *this += t * other
  SymmetricMatrix& axpy(double t, const SymmetricMatrix& other);
  SymmetricMatrix scaled(double t) const;
  Vector multiply(const Vector& x) const;

 private:
  int n_ = 0;
  double asym_ = 0.0;
  std::vector<double> a_;
};

double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b);

// Leading k x k block of m.
SymmetricMatrix principal_block(const SymmetricMatrix& m, int k);

struct EigenSystem {
  Vector values;                // ascending; ties keep original column order
  std::vector<double> vectors;  // column-major, vectors[j*n + i] = V(i,j)
};

// Cyclic Jacobi. Converges when the off-diagonal Frobenius mass drops below
// 1e-14 * ||M||_F, capped at 100 sweeps.
EigenSystem sym_eigen(const SymmetricMatrix& m);

// min eigenvalue >= -tol * (1 + max |entry|)
bool is_psd(const SymmetricMatrix& m, double tol);
double min_eigenvalue(const SymmetricMatrix& m);

struct LeastSquaresSolution {
  Vector coefficients;
  double residual_norm;
};

// Minimal-norm least squares: coefficients minimizing ||sum_i c_i col_i - rhs||
// with the smallest ||c|| among minimizers (Gram pseudo-inverse).
LeastSquaresSolution least_squares_solve(const std::vector<Vector>& columns, const Vector& rhs);

// Global infimum of q(x) = x'Qx/2 + c'x + r over all of R^n. Returns
// -infinity when Q has an eigenvalue below -tol*(1+max|Q|) or when the
// component of c outside range(Q) exceeds 1e-8*(1+||c||); otherwise
// r - c'Q^+c/2 with the eigen-based pseudo-inverse.
double convex_quadratic_infimum(const SymmetricMatrix& q, const Vector& c, double r,
                                double tol = 1e-9);

// Inclusive uniform grid with exact endpoints. Doubling the resolution to
// 2*count-1 reproduces every coarse point bit-for-bit, so grid refinements
// are true supersets.
Vector uniform_grid(double lo, double hi, int count);

}  // namespace robustqp
