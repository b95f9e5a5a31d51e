#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kneadlab/error.hpp"
#include "kneadlab/numeric.hpp"

namespace kneadlab {

/// Dense matrix whose rows and columns carry integer labels (vertex names of
/// a Bratteli level, or simplex coordinates 0..n). Labels default to 0..n-1.
template <class T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill),
        row_labels_(iota(rows)), col_labels_(iota(cols)) {}

  Matrix(std::vector<std::size_t> row_labels, std::vector<std::size_t> col_labels,
         const T& fill = T(0))
      : rows_(row_labels.size()), cols_(col_labels.size()), data_(rows_ * cols_, fill),
        row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<std::size_t>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::size_t>& col_labels() const noexcept { return col_labels_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Entry equality only; labels are compared by the caller when relevant.
  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  static std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
  std::vector<std::size_t> row_labels_;
  std::vector<std::size_t> col_labels_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;
using RationalVector = std::vector<Rational>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix to_rational(const IntegerMatrix& m);

/// Exact product; dimension-mismatch unless a.cols == b.rows.
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
RationalVector apply(const RationalMatrix& a, const RationalVector& x);

RationalVector subtract(const RationalVector& a, const RationalVector& b);
Rational one_norm(const RationalVector& v);

/// Non-negative entries summing to exactly 1.
bool in_simplex(const RationalVector& v);

/// Diagnostic naming the first offending column, or nullopt when stochastic.
std::optional<std::string> stochastic_violation(const RationalMatrix& a);
bool is_stochastic(const RationalMatrix& a);

/// First (row, column) where the matrices differ; nullopt when equal.
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const RationalMatrix& a,
                                                                    const RationalMatrix& b);

/// Exact rank via fraction-free (Bareiss) elimination after clearing
/// denominators row by row.
std::size_t rank(const RationalMatrix& a);

std::vector<RationalVector> unit_vectors(std::size_t n);

}  // namespace kneadlab
