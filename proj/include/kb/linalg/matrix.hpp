#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kb/linalg/scalar.hpp"

namespace kb {

template <RingScalar K>
using Vec = std::vector<K>;

template <RingScalar K>
Vec<K> zero_vec(std::size_t n) {
  return Vec<K>(n, K(0));
}

template <RingScalar K>
bool is_zero_vec(std::span<const K> v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <RingScalar K>
Vec<K> add(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch");
  Vec<K> r(a.size(), K(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <RingScalar K>
Vec<K> sub(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch");
  Vec<K> r(a.size(), K(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <RingScalar K>
Vec<K> scale(const K& c, const Vec<K>& a) {
  Vec<K> r(a.size(), K(0));
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) r[i] = c * a[i];
  return r;
}

/// y += c * x
template <RingScalar K>
void axpy(Vec<K>& y, const K& c, std::span<const K> x) {
  if (y.size() != x.size()) throw ShapeError("vector length mismatch");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

/// Dense row-major matrix of exact scalars.
template <RingScalar K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw ShapeError("matrix data does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<Vec<K>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vec<K>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const K> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<K> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec<K> row_vec(std::size_t i) const { return Vec<K>(row(i).begin(), row(i).end()); }
  Vec<K> col_vec(std::size_t j) const {
    Vec<K> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }
  const std::vector<K>& data() const { return data_; }

  bool is_zero() const { return is_zero_vec<K>(data_); }

  std::size_t nonzeros() const {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](const K& x) { return !x.is_zero(); }));
  }
  double density() const { return data_.empty() ? 0.0 : static_cast<double>(nonzeros()) / static_cast<double>(data_.size()); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<K> apply(const Vec<K>& v) const {
    if (v.size() != cols_) throw ShapeError("matrix-vector shape mismatch");
    Vec<K> r(rows_, K(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        if (!(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    }
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// [a | b]
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw ShapeError("hstack row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
  }
  /// [a ; b]
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_ && !(a.rows_ == 0 || b.rows_ == 0)) throw ShapeError("vstack column mismatch");
    std::size_t cols = a.rows_ == 0 ? b.cols_ : a.cols_;
    Matrix r(a.rows_ + b.rows_, cols);
    std::copy(a.data_.begin(), a.data_.end(), r.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), r.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw ShapeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

}  // namespace kb
