#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "detpert/errors.hpp"

namespace detpert {

// Dense row-major matrix of doubles. Used for rectangular intermediates:
// off-diagonal blocks, triangular factors, products.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<double> row_major);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<const double> data() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);

// Dense real symmetric matrix. Construction symmetrizes the input entries as
// (a_ij + a_ji)/2, so entries(i,j) == entries(j,i) holds exactly afterwards.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);  // zero matrix
  SymMatrix(int n, std::span<const double> row_major);
  explicit SymMatrix(const Matrix& a);  // must be square
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> d);

  int n() const { return n_; }

  double operator()(int i, int j) const { return data_[index(i, j)]; }

  // Writes both (i,j) and (j,i).
  void set(int i, int j, double value);

  Matrix to_matrix() const;
  std::span<const double> data() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

// a + s*I
SymMatrix add_scaled_identity(const SymMatrix& a, double s);

double max_abs(const SymMatrix& a);
double frobenius_norm(const SymMatrix& a);

}  // namespace detpert
