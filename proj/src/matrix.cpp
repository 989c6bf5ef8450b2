#include "canon/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace canon {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::from_int(0, field)) {}

Matrix::Matrix(std::vector<std::vector<Scalar>> rows, Field field) : field_(field) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
    for (auto& x : r) data_.push_back(x.in_field(field));
  }
}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::from_int(1, field);
  return m;
}

std::vector<Scalar> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<long>(r * cols_),
          data_.begin() + static_cast<long>((r + 1) * cols_)};
}

std::vector<Scalar> Matrix::column(std::size_t c) const {
  std::vector<Scalar> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::in_field(Field field) const {
  Matrix out(rows_, cols_, field);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].in_field(field);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<Scalar> operator*(const Matrix& a, const std::vector<Scalar>& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<Scalar> out(a.rows_, Scalar::from_int(0, a.field_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::approx_equal(const Matrix& o, double tol) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].approx_equal(o.data_[i], tol)) return false;
  return true;
}

bool Matrix::is_identity() const {
  return rows_ == cols_ && approx_equal(identity(rows_, field_));
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Matrix inv = identity(n, field_);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = -1;
    for (std::size_t r = col; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      double mag = std::abs(a(r, col).to_float());
      if (a.field_ != Field::real) {
        pivot = r;
        break;
      }
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot == n || (field_ == Field::real && best < 1e-14))
      throw std::domain_error("singular matrix");
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    Scalar p = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= p;
      inv(col, c) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero()) a(r, c) -= factor * a(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

Scalar Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  if (rows_ == 0) return Scalar::from_int(1, field_);
  Echelon e = fraction_free_echelon(*this);
  if (e.rank() < rows_) return Scalar::from_int(0, field_);
  // Bareiss: the last pivot is the determinant up to the row permutation sign.
  Scalar det = e.reduced(rows_ - 1, cols_ - 1);
  std::vector<std::size_t> perm = e.row_order;
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  return sign > 0 ? det : -det;
}

Echelon fraction_free_echelon(const Matrix& m, double tol) {
  Echelon out{m, {}, {}};
  Matrix& a = out.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  const bool inexact = m.field() == Field::real;
  out.row_order.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.row_order[i] = i;

  std::vector<double> col_scale(cols, 0.0);
  if (inexact)
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < rows; ++r)
        col_scale[c] = std::max(col_scale[c], std::abs(a(r, c).to_float()));

  Scalar prev = Scalar::from_int(1, m.field());
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = rows;
    if (inexact) {
      double best = tol * std::max(col_scale[col], 1.0);
      for (std::size_t r = row; r < rows; ++r) {
        double mag = std::abs(a(r, col).to_float() / prev.to_float());
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
    } else {
      for (std::size_t r = row; r < rows; ++r)
        if (!a(r, col).is_zero()) {
          pivot = r;
          break;
        }
    }
    if (pivot == rows) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a(pivot, c), a(row, c));
      std::swap(out.row_order[pivot], out.row_order[row]);
    }
    const Scalar p = a(row, col);
    for (std::size_t r = row + 1; r < rows; ++r) {
      const Scalar lead = a(r, col);
      for (std::size_t c = col + 1; c < cols; ++c) {
        Scalar v = p * a(r, c);
        if (!lead.is_zero()) v -= lead * a(row, c);
        a(r, c) = v / prev;
      }
      a(r, col) = Scalar::from_int(0, m.field());
    }
    // entries left of the pivot in the pivot row are already zero
    prev = p;
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Matrix& m) { return fraction_free_echelon(m).rank(); }

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  Echelon e = fraction_free_echelon(m);
  const std::size_t cols = m.cols();
  const Field field = m.field();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar::from_int(0, field));
    v[free] = Scalar::from_int(1, field);
    // back substitution through the echelon rows
    for (std::size_t k = e.rank(); k-- > 0;) {
      std::size_t pc = e.pivots[k];
      Scalar acc = Scalar::from_int(0, field);
      for (std::size_t c = pc + 1; c < cols; ++c)
        if (!e.reduced(k, c).is_zero() && !v[c].is_zero()) acc += e.reduced(k, c) * v[c];
      v[pc] = -acc / e.reduced(k, pc);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace canon
