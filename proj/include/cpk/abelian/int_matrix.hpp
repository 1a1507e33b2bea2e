#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cpk/errors.hpp"

namespace cpk {

/// Exact integer used for every K-theoretic computation.
using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix. Empty shapes (0 rows or 0 cols) are legal.
template <class Int>
class BasicIntMatrix {
 public:
  using value_type = Int;

  BasicIntMatrix() = default;
  BasicIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  BasicIntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw MalformedInput("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static BasicIntMatrix identity(std::size_t n) {
    BasicIntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  template <class T>
  static BasicIntMatrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0) {
    BasicIntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw MalformedInput("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = Int(rows[i][j]);
    }
    return m;
  }

  /// Matrix whose columns are the given vectors, all of length `rows`.
  static BasicIntMatrix from_columns(const std::vector<std::vector<Int>>& cols, std::size_t rows) {
    BasicIntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw MalformedInput("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static BasicIntMatrix diagonal(const std::vector<Int>& d) {
    BasicIntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<Int> row(std::size_t i) const {
    return std::vector<Int>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
  }

  BasicIntMatrix transpose() const {
    BasicIntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns [first, first+count).
  BasicIntMatrix column_range(std::size_t first, std::size_t count) const {
    BasicIntMatrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }
  BasicIntMatrix select_columns(const std::vector<std::size_t>& idx) const {
    BasicIntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  BasicIntMatrix select_rows(const std::vector<std::size_t>& idx) const {
    BasicIntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  /// [this | other]
  BasicIntMatrix hcat(const BasicIntMatrix& other) const {
    if (other.rows_ != rows_) throw MalformedInput("hcat: row count mismatch");
    BasicIntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
  }
  /// [this ; other]
  BasicIntMatrix vcat(const BasicIntMatrix& other) const {
    if (other.cols_ != cols_) throw MalformedInput("vcat: column count mismatch");
    BasicIntMatrix m(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(), m.data_.begin() + data_.size());
    return m;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw MalformedInput("matrix-vector dimension mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend BasicIntMatrix operator*(const BasicIntMatrix& a, const BasicIntMatrix& b) {
    if (a.cols_ != b.rows_) throw MalformedInput("matrix product dimension mismatch");
    BasicIntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend BasicIntMatrix operator+(BasicIntMatrix a, const BasicIntMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend BasicIntMatrix operator-(BasicIntMatrix a, const BasicIntMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend BasicIntMatrix operator*(const Int& s, BasicIntMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend BasicIntMatrix operator-(BasicIntMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const BasicIntMatrix& a, const BasicIntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicIntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  void require_same_shape(const BasicIntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw MalformedInput("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

using IntMatrix = BasicIntMatrix<Integer>;
using IntVector = std::vector<Integer>;

}  // namespace cpk
