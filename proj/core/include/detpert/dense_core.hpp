#pragma once

#include <vector>

#include "detpert/matrix.hpp"

namespace detpert {

// Relative Cholesky pivot threshold: a factorization fails when some pivot
// L_jj <= kPivotFloor * max(1, max_abs(a)). Below that the matrix is treated
// as not positive definite at working precision.
inline constexpr double kPivotFloor = 1e-12;

// Validated positive-definite symmetric matrix. Construction runs the
// Cholesky factorization A = L L^T and caches the lower factor together with
// log det A = 2 * sum_j log L_jj; determinants never leave the log domain.
// Immutable after construction and safe to share across threads.
class SpdMatrix {
 public:
  explicit SpdMatrix(const SymMatrix& a, double pivot_floor = kPivotFloor);

  int dim() const { return base_.n(); }
  const SymMatrix& base() const { return base_; }
  const Matrix& chol_lower() const { return chol_; }
  double log_det() const { return log_det_; }

  // Solves A X = rhs with the cached factor (forward then back substitution).
  Matrix solve(const Matrix& rhs) const;

 private:
  SymMatrix base_;
  Matrix chol_;
  double log_det_ = 0.0;
};

// Factorization entry point; throws NotPositiveDefiniteError when a pivot
// falls at or below the floor.
SpdMatrix cholesky(const SymMatrix& a, double pivot_floor = kPivotFloor);

double log_det(const SpdMatrix& a);

// A^{-1} via two triangular solves against the cached Cholesky factor.
SymMatrix invert(const SpdMatrix& a);

struct JacobiOptions {
  int max_sweeps = 100;
  // Converged when the off-diagonal Frobenius mass is <= off_tol * ||a||_F.
  double off_tol = 1e-12;
};

// Eigendecomposition A = Q diag(lambda) Q^T with eigenvalues sorted
// descending and Q orthogonal.
struct EigenDecomp {
  Matrix q;
  std::vector<double> lambda;
};

// Cyclic Jacobi rotations (Golub & Van Loan, sec. 8.5). Unconditionally
// convergent for symmetric input at the dimensions this library targets;
// throws NoConvergenceError if the sweep budget runs out.
EigenDecomp sym_eigen(const SymMatrix& a, const JacobiOptions& opts = {});

// Unique SPD square root Q lambda^{1/2} Q^T.
SpdMatrix spd_sqrt(const SpdMatrix& a);

// Square root of a positive semi-definite matrix; eigenvalues slightly below
// zero (within jitter of the eigensolver) are clamped to zero.
SymMatrix psd_sqrt(const SymMatrix& a);

// Evidence for the Loewner comparison a >= b: the minimum eigenvalue of
// a - b, plus the scale used to interpret it.
struct LoewnerEvidence {
  double min_eig = 0.0;
  double diff_max_abs = 0.0;
  double tol = 0.0;

  double threshold() const { return -tol * (1.0 + diff_max_abs); }
  bool is_geq() const { return min_eig >= threshold(); }
};

LoewnerEvidence loewner_cmp(const SymMatrix& a, const SymMatrix& b, double tol);

// log |det| and sign of a general square matrix via LU with partial
// pivoting. Independent of the Cholesky path; used for determinants of
// non-symmetric products such as I + B D. sign == 0 flags a singular matrix.
struct GeneralLogDet {
  double sign = 0.0;
  double log_abs = 0.0;
};

GeneralLogDet lu_logdet(Matrix a);

// Convenience: log det of I + X Y where the product is not symmetric in
// general; throws if the determinant is not positive.
double logdet_identity_plus(const Matrix& product);

}  // namespace detpert
