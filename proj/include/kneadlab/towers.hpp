#pragma once

#include <cstddef>
#include <vector>

#include "kneadlab/matrix.hpp"

namespace kneadlab {

/// matrices[n-1] is A_n : Delta_[0,n+1] -> Delta_[0,n], an (n+1) x (n+2)
/// stochastic matrix.
struct Tower {
  std::vector<RationalMatrix> matrices;
  bool normalized = false;

  std::size_t levels() const noexcept { return matrices.size(); }
  const RationalMatrix& at(std::size_t n) const;  // A_n, n >= 1
};

/// Shape and stochasticity of every level; throws on the first violation.
void validate(const Tower& tower);

/// A_n(e_j) = e_j for all j in [0, n] and all levels.
bool is_normalized(const Tower& tower);

/// Product with stochasticity of the result asserted.
RationalMatrix compose(const RationalMatrix& a, const RationalMatrix& b);

struct NormReport {
  Rational lhs;  // ||A w - A w'||_1
  Rational rhs;  // ||w - w'||_1
};

NormReport one_norm_contraction_check(const RationalMatrix& a, const RationalVector& w,
                                      const RationalVector& w_prime);

/// A permutation of [0, n] stored as its image list.
using Permutation = std::vector<std::size_t>;

struct NormalizedTower {
  Tower tower;
  std::vector<Permutation> sigma;  // sigma[n-1] is sigma_n, n = 1..levels+1
  std::vector<std::vector<std::size_t>> iota;  // iota[n-1] is iota_n
};

/// Conjugates by the permutations sigma_n built inductively from sigma_1 = id
/// and sigma_{n+1}(iota_n(j)) = sigma_n(j), where iota_n(j) is the smallest
/// column of A_n equal to e_j.
NormalizedTower normalize_tower(const Tower& tower);

/// A_n = H_n B_n H_{n+1}^{-1} with H(e_j) = e_{sigma(j)}.
RationalMatrix conjugate(const RationalMatrix& b, const Permutation& row_sigma,
                         const Permutation& col_sigma);

/// Inverse of conjugate(): recovers B_n from A_n.
RationalMatrix unconjugate(const RationalMatrix& a, const Permutation& row_sigma,
                           const Permutation& col_sigma);

/// Maximum over columns of the l1 distance, which is the supremum of
/// ||(A - B) v||_1 over the simplex since that function is convex.
Rational column_distance(const RationalMatrix& a, const RationalMatrix& b);

struct ConjugacyEstimate {
  RationalVector x_nm;       // B_n ... B_m x_{m+1}
  RationalVector x_n;        // A_n ... A_m x_{m+1}
  Rational deviation;        // ||x_n - x_nm||_1
  Rational bound;            // sum of column distances over [n, m]
};

ConjugacyEstimate conjugacy_estimate(const Tower& a, const Tower& b, std::size_t n, std::size_t m,
                                     const RationalVector& x_top);

}  // namespace kneadlab
