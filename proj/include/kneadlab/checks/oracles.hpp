#pragma once

// Reference implementations used only to cross-check the library. Each one
// is built from the defining formulas, not from the library's algorithms.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "kneadlab/cfexample.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/matrix.hpp"

namespace kneadlab::oracle {

/// S_0 = 1, S_k = S_{k-1} + S_{Q(k)}.
std::vector<Integer> cutting_times(std::span<const std::size_t> q);

/// Subset-sum table over the prefixes of S_0..S_{K-1}, capped at `limit`.
/// Answers the digit set summing to n that is largest when two sets are
/// compared at their highest differing index.
class TopDominantExpander {
 public:
  TopDominantExpander(const std::vector<Integer>& s, std::size_t limit);
  /// Throws not_found when n is not a subset sum.
  std::vector<std::size_t> expand(std::size_t n) const;

 private:
  std::vector<std::size_t> s_;
  std::vector<std::vector<char>> reach_;  // reach_[i][m]: m is a subset sum of s_[0..i)
};

/// x_k = 1 forces x_j = 0 for j in [Q(k+1), k-1]; needs Q through max(x)+1.
bool in_omega(std::span<const std::size_t> q, const std::vector<std::size_t>& digits);

struct EnumeratedSums {
  std::vector<std::size_t> top_dominant_max;             // as TopDominantExpander
  std::vector<std::vector<std::size_t>> omega_solutions;  // every solution inside Omega_Q
};

/// Exhaustive search over all subsets of the first `count` cutting times,
/// keyed by every sum below `limit`.
std::map<std::size_t, EnumeratedSums> enumerate_sums(std::span<const std::size_t> q,
                                                     const std::vector<Integer>& s, std::size_t count,
                                                     std::size_t limit);

/// Number of root-to-vertex paths ending in each vertex of level j, by
/// depth-first enumeration of the diagram defined by vertex and edge sets.
std::map<std::size_t, std::size_t> dfs_path_counts(std::span<const std::size_t> q, std::size_t j);

/// Rank over the rationals by fraction-based row reduction.
std::size_t rational_rank(const RationalMatrix& m);

/// Convergents of [0; a_1, ..., a_n] via p_i = a_i p_{i-1} + p_{i-2}.
struct ContinuantPair {
  Integer p;
  Integer q;
};
std::vector<ContinuantPair> continuants(const std::vector<std::size_t>& a);

/// True when sqrt(2) - 1 lies in [x - r, x + r], decided with squares only.
bool brackets_sqrt2_minus_1(const Rational& x, const Rational& r);

/// A(sigma_n(i), sigma_{n+1}(k)) = B(i, k) by explicit index loops.
RationalMatrix permute(const RationalMatrix& b, const std::vector<std::size_t>& row_sigma,
                       const std::vector<std::size_t>& col_sigma);

}  // namespace kneadlab::oracle
