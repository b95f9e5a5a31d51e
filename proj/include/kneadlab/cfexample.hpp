#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kneadlab/kneading.hpp"
#include "kneadlab/matrix.hpp"

namespace kneadlab {

/// beta in (1/(k+1), 1/k) with 1/beta - k = [0; a_1, a_2, ...].
struct CfSpec {
  std::size_t k = 2;
  std::vector<std::size_t> a;
};

void validate(const CfSpec& spec);

/// Q = 0 on [0, k]. For n >= 0, Q = k-1+a_1+...+a_n on
/// [k+1+a_1+...+a_n, k+a_1+...+a_{n+1}].
KneadingMap build_cf_q(const CfSpec& spec, std::size_t depth);

/// Largest index covered by the given partial quotients.
std::size_t cf_covered_depth(const CfSpec& spec);

using Matrix2 = std::array<std::array<Integer, 2>, 2>;

Matrix2 mul(const Matrix2& x, const Matrix2& y);
Integer det(const Matrix2& x);

struct Convergent {
  std::size_t n;
  Integer p;
  Integer q;
  Rational value;        // p / q
  Rational error_bound;  // 1 / (q_n q_{n+1}); zero when a_{n+1} is unknown
};

struct ContinuantProducts {
  std::vector<Matrix2> factors;     // A_0 = [[k-1,1],[1,0]], A_i = [[a_i,1],[1,0]]
  std::vector<Matrix2> cumulative;  // cumulative[i] = A_1 ... A_i, cumulative[0] = I
  std::vector<Convergent> convergents;  // of [0; a_1, ..., a_i], i = 1..n
};

ContinuantProducts continuant_products(const CfSpec& spec, std::size_t n);

/// Partial quotients of a positive rational x = [a_0; a_1, ...].
std::vector<Integer> partial_quotients(const Rational& x);

/// Incidence product N_{first} ... N_{last} over the block of a_n in the
/// diagram of the continued-fraction map, between the two-vertex levels
/// k + a_1 + ... + a_{n-1} and k + a_1 + ... + a_n.
IntegerMatrix cf_block_incidence(const CfSpec& spec, std::size_t n);

}  // namespace kneadlab
