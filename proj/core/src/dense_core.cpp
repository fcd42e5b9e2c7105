#include "detpert/dense_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace detpert {

SpdMatrix::SpdMatrix(const SymMatrix& a, double pivot_floor)
    : base_(a), chol_(a.n(), a.n()) {
  const int n = a.n();
  const double floor = pivot_floor * std::max(1.0, max_abs(a));
  double half_log_det = 0.0;
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= chol_(j, k) * chol_(j, k);
    if (!(d > 0.0)) {
      throw NotPositiveDefiniteError("Cholesky pivot " + std::to_string(j) +
                                     " is not positive");
    }
    const double ljj = std::sqrt(d);
    if (!(ljj > floor)) {
      throw NotPositiveDefiniteError("Cholesky pivot " + std::to_string(j) +
                                     " below pivot floor");
    }
    chol_(j, j) = ljj;
    half_log_det += std::log(ljj);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= chol_(i, k) * chol_(j, k);
      chol_(i, j) = s / ljj;
    }
  }
  log_det_ = 2.0 * half_log_det;
}

Matrix SpdMatrix::solve(const Matrix& rhs) const {
  const int n = dim();
  if (rhs.rows() != n) {
    throw DimensionMismatchError("solve: right-hand side has wrong row count");
  }
  Matrix x = rhs;
  // L y = rhs
  for (int c = 0; c < x.cols(); ++c) {
    for (int i = 0; i < n; ++i) {
      double s = x(i, c);
      for (int k = 0; k < i; ++k) s -= chol_(i, k) * x(k, c);
      x(i, c) = s / chol_(i, i);
    }
    // L^T x = y
    for (int i = n - 1; i >= 0; --i) {
      double s = x(i, c);
      for (int k = i + 1; k < n; ++k) s -= chol_(k, i) * x(k, c);
      x(i, c) = s / chol_(i, i);
    }
  }
  return x;
}

SpdMatrix cholesky(const SymMatrix& a, double pivot_floor) {
  return SpdMatrix(a, pivot_floor);
}

double log_det(const SpdMatrix& a) { return a.log_det(); }

SymMatrix invert(const SpdMatrix& a) {
  return SymMatrix(a.solve(Matrix::identity(a.dim())));
}

namespace {

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomp sym_eigen(const SymMatrix& input, const JacobiOptions& opts) {
  const int n = input.n();
  Matrix a = input.to_matrix();
  Matrix q = Matrix::identity(n);
  const double target = opts.off_tol * frobenius_norm(input);

  int sweep = 0;
  while (off_diagonal_mass(a) > target) {
    if (sweep++ >= opts.max_sweeps) {
      throw NoConvergenceError("Jacobi eigensolver exceeded max sweeps");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        // Symmetric Schur rotation zeroing a(p,r); stable tangent formula.
        const double tau = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app = a(p, p);
        const double arr = a(r, r);
        a(p, p) = app - t * apr;
        a(r, r) = arr + t * apr;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == r) continue;
          const double aip = a(i, p);
          const double air = a(i, r);
          a(i, p) = c * aip - s * air;
          a(p, i) = a(i, p);
          a(i, r) = s * aip + c * air;
          a(r, i) = a(i, r);
        }
        for (int i = 0; i < n; ++i) {
          const double qip = q(i, p);
          const double qir = q(i, r);
          q(i, p) = c * qip - s * qir;
          q(i, r) = s * qip + c * qir;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int lhs, int rhs) { return a(lhs, lhs) > a(rhs, rhs); });

  EigenDecomp out{Matrix(n, n), std::vector<double>(n)};
  for (int j = 0; j < n; ++j) {
    out.lambda[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.q(i, j) = q(i, order[j]);
  }
  return out;
}

namespace {

SymMatrix eigen_sqrt(const SymMatrix& a, bool clamp_negative) {
  const EigenDecomp e = sym_eigen(a);
  const int n = a.n();
  Matrix scaled = e.q;
  for (int j = 0; j < n; ++j) {
    double lam = e.lambda[j];
    if (lam < 0.0) {
      if (!clamp_negative) {
        throw NotPositiveDefiniteError("spd_sqrt: negative eigenvalue");
      }
      lam = 0.0;
    }
    const double root = std::sqrt(lam);
    for (int i = 0; i < n; ++i) scaled(i, j) *= root;
  }
  return SymMatrix(scaled * transpose(e.q));
}

}  // namespace

SpdMatrix spd_sqrt(const SpdMatrix& a) {
  // Eigenvalues of an SPD input may round to barely negative only in
  // pathological conditioning; clamping keeps the final Cholesky the arbiter.
  return cholesky(eigen_sqrt(a.base(), true));
}

SymMatrix psd_sqrt(const SymMatrix& a) { return eigen_sqrt(a, true); }

LoewnerEvidence loewner_cmp(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.n() != b.n()) {
    throw DimensionMismatchError("loewner_cmp requires equal dimensions");
  }
  const SymMatrix diff = a - b;
  const EigenDecomp e = sym_eigen(diff);
  return LoewnerEvidence{e.lambda.back(), max_abs(diff), tol};
}

GeneralLogDet lu_logdet(Matrix a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatchError("lu_logdet requires a square matrix");
  }
  const int n = a.rows();
  double sign = 1.0;
  double log_abs = 0.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) {
      return GeneralLogDet{0.0, -std::numeric_limits<double>::infinity()};
    }
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    const double akk = a(k, k);
    if (akk < 0.0) sign = -sign;
    log_abs += std::log(std::abs(akk));
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / akk;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return GeneralLogDet{sign, log_abs};
}

double logdet_identity_plus(const Matrix& product) {
  if (product.rows() != product.cols()) {
    throw DimensionMismatchError("logdet_identity_plus requires a square product");
  }
  const GeneralLogDet d = lu_logdet(Matrix::identity(product.rows()) + product);
  if (d.sign <= 0.0) {
    throw NotPositiveDefiniteError("logdet_identity_plus: determinant not positive");
  }
  return d.log_abs;
}

}  // namespace detpert
