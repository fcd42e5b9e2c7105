#include "detpert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace detpert {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DimensionMismatchError(message);
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 1 && cols >= 1, "Matrix dimensions must be positive");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require(rows >= 1 && cols >= 1, "Matrix dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(rows) * cols,
          "Matrix data length does not match dimensions");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "Matrix addition requires equal shapes");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "Matrix subtraction requires equal shapes");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "Matrix product requires inner dimensions to match");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

SymMatrix::SymMatrix(int n) : n_(n) {
  require(n >= 1, "SymMatrix dimension must be positive");
  data_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix::SymMatrix(int n, std::span<const double> row_major) : SymMatrix(n) {
  require(row_major.size() == static_cast<std::size_t>(n) * n,
          "SymMatrix data length does not match dimension");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = 0.5 * (row_major[index(i, j)] + row_major[index(j, i)]);
      data_[index(i, j)] = v;
      data_[index(j, i)] = v;
    }
  }
}

SymMatrix::SymMatrix(const Matrix& a) {
  require(a.rows() == a.cols(), "SymMatrix requires a square matrix");
  *this = SymMatrix(a.rows(), a.data());
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  require(n >= 1, "SymMatrix dimension must be positive");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    require(static_cast<int>(row.size()) == n, "SymMatrix initializer must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  *this = SymMatrix(n, flat);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.data_[m.index(i, i)] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n(); ++i) m.data_[m.index(i, i)] = d[i];
  return m;
}

void SymMatrix::set(int i, int j, double value) {
  data_[index(i, j)] = value;
  data_[index(j, i)] = value;
}

Matrix SymMatrix::to_matrix() const { return Matrix(n_, n_, data_); }

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require(a.n() == b.n(), "SymMatrix addition requires equal dimensions");
  SymMatrix out(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j <= i; ++j) out.set(i, j, a(i, j) + b(i, j));
  return out;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require(a.n() == b.n(), "SymMatrix subtraction requires equal dimensions");
  SymMatrix out(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j <= i; ++j) out.set(i, j, a(i, j) - b(i, j));
  return out;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix out(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j <= i; ++j) out.set(i, j, s * a(i, j));
  return out;
}

SymMatrix add_scaled_identity(const SymMatrix& a, double s) {
  SymMatrix out = a;
  for (int i = 0; i < a.n(); ++i) out.set(i, i, a(i, i) + s);
  return out;
}

double max_abs(const SymMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius_norm(const SymMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace detpert
