#include "kneadlab/matrix.hpp"

namespace kneadlab {

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.row_labels(), m.col_labels());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  }
  return out;
}

namespace {

template <class T>
Matrix<T> product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::dimension_mismatch,
                "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<T> out(a.row_labels(), b.col_labels());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

}  // namespace

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) { return product(a, b); }
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) { return product(a, b); }

RationalVector apply(const RationalMatrix& a, const RationalVector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::dimension_mismatch, "matrix has " + std::to_string(a.cols()) +
                                                   " columns, vector has " +
                                                   std::to_string(x.size()) + " entries");
  }
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  }
  return out;
}

RationalVector subtract(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "vector sizes differ");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational one_norm(const RationalVector& v) {
  Rational total = 0;
  for (const auto& x : v) total += abs(x);
  return total;
}

bool in_simplex(const RationalVector& v) {
  Rational total = 0;
  for (const auto& x : v) {
    if (x < 0) return false;
    total += x;
  }
  return total == 1;
}

std::optional<std::string> stochastic_violation(const RationalMatrix& a) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational total = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) < 0) {
        return "negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      }
      total += a(i, j);
    }
    if (total != 1) {
      return "column " + std::to_string(j) + " sums to " + to_string(total);
    }
  }
  return std::nullopt;
}

bool is_stochastic(const RationalMatrix& a) { return !stochastic_violation(a); }

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const RationalMatrix& a,
                                                                    const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "matrices have different shapes");
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

std::size_t rank(const RationalMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

std::vector<RationalVector> unit_vectors(std::size_t n) {
  std::vector<RationalVector> out(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

}  // namespace kneadlab
