// Small dense matrices over Scalar, plus fraction-free elimination.
#pragma once

#include <vector>

#include "canon/scalar.hpp"

namespace canon {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field);
  Matrix(std::vector<std::vector<Scalar>> rows, Field field);

  static Matrix identity(std::size_t n, Field field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> row(std::size_t r) const;
  std::vector<Scalar> column(std::size_t c) const;

  Matrix transpose() const;
  Matrix inverse() const;
  Scalar determinant() const;
  Matrix in_field(Field field) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend std::vector<Scalar> operator*(const Matrix& a, const std::vector<Scalar>& v);
  friend bool operator==(const Matrix& a, const Matrix& b);
  bool approx_equal(const Matrix& o, double tol = kFloatTolerance) const;
  bool is_identity() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::rational;
  std::vector<Scalar> data_;
};

/// Result of fraction-free (Bareiss) row reduction.
struct Echelon {
  Matrix reduced;                  ///< upper echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
  std::vector<std::size_t> row_order;  ///< original index of each reduced row
  std::size_t rank() const { return pivots.size(); }
};

/// Bareiss elimination. Every division is exact in the sense of the
/// fraction-free recurrence; for float matrices entries with
/// |x| <= tol * (column scale) are treated as zero.
Echelon fraction_free_echelon(const Matrix& m, double tol = kFloatTolerance);

std::size_t rank(const Matrix& m);

/// Basis of {c : m c = 0}, one vector per free column.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

}  // namespace canon
