#include <doctest.h>

#include "helpers.hpp"
#include "kneadlab/bratteli.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"
#include "kneadlab/matrix.hpp"
#include "kneadlab/towers.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

RationalMatrix random_stochastic(checks::Rng& rng, std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const RationalVector col = checks::random_simplex_point(rng, rows, 12);
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = col[r];
  }
  return m;
}

RationalMatrix swapped_identity_column(std::size_t n) {
  RationalMatrix m = identity_matrix(n);
  m(0, 0) = 0;
  m(1, 0) = 1;
  return m;
}

}  // namespace

TEST_CASE("composition with the identity") {
  checks::Rng rng(1);
  const RationalMatrix a = random_stochastic(rng, 3, 4);
  CHECK(compose(identity_matrix(3), a) == a);
}

TEST_CASE("M_2 of EX1 applied to a unit vector reads a column") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 2);
  const RationalMatrix m = transition_matrices(d, 2).M;
  const RationalVector image = kneadlab::apply(m, RationalVector{0, 1});
  CHECK(image == RationalVector{1, 0});
}

TEST_CASE("products of stochastic matrices are stochastic") {
  checks::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    CHECK(is_stochastic(compose(random_stochastic(rng, 3, 3), random_stochastic(rng, 3, 3))));
  }
}

TEST_CASE("one-norm contraction") {
  checks::Rng rng(4);
  const RationalVector w = checks::random_simplex_point(rng, 4, 10);
  const NormReport same = one_norm_contraction_check(random_stochastic(rng, 4, 4), w, w);
  CHECK(same.lhs == 0);
  CHECK(same.rhs == 0);

  const RationalVector w2 = checks::random_simplex_point(rng, 4, 10);
  const NormReport id = one_norm_contraction_check(identity_matrix(4), w, w2);
  CHECK(id.lhs == id.rhs);

  for (int i = 0; i < 50; ++i) {
    const NormReport r = one_norm_contraction_check(random_stochastic(rng, 4, 4),
                                                    checks::random_simplex_point(rng, 4, 9),
                                                    checks::random_simplex_point(rng, 4, 9));
    CHECK(r.lhs <= r.rhs);
  }

  RationalVector outside{rat(1, 2), rat(1, 2), rat(1, 2), 0};
  REQUIRE_ERROR_KIND(one_norm_contraction_check(identity_matrix(4), outside, w),
                     ErrorKind::not_in_simplex);
}

TEST_CASE("rank examples") {
  CHECK(rank(identity_matrix(5)) == 5);
  RationalMatrix equal(3, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    equal(0, c) = rat(1, 2);
    equal(1, c) = rat(1, 3);
    equal(2, c) = rat(1, 6);
  }
  CHECK(rank(equal) == 1);
}

TEST_CASE("property: rank agrees with the elimination oracle") {
  checks::Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    const std::size_t rows = 1 + i % 5;
    const std::size_t cols = 1 + (i / 5) % 5;
    RationalMatrix m(rows, cols);
    std::uniform_int_distribution<int> coin(-3, 3);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = i % 3 == 0 ? Rational(coin(rng) % 2) : Rational(coin(rng), 4);
    }
    CHECK(rank(m) == oracle::rational_rank(m));
  }
}

TEST_CASE("normalizing an already normalized tower keeps identity permutations") {
  Tower t;
  for (std::size_t n = 1; n <= 3; ++n) {
    RationalMatrix a(n + 1, n + 2);
    for (std::size_t j = 0; j <= n; ++j) a(j, j) = 1;
    a(0, n + 1) = rat(1, 2);
    a(n, n + 1) = rat(1, 2);
    t.matrices.push_back(a);
  }
  REQUIRE(is_normalized(t));
  const NormalizedTower out = normalize_tower(t);
  for (const Permutation& s : out.sigma) {
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == i);
  }
  CHECK(out.tower.matrices == t.matrices);
}

TEST_CASE("normalization of a tower with swapped columns") {
  Tower t;
  RationalMatrix a1(2, 3);
  a1(1, 0) = 1;
  a1(0, 1) = 1;
  a1(0, 2) = rat(1, 3);
  a1(1, 2) = rat(2, 3);
  t.matrices.push_back(a1);
  const NormalizedTower out = normalize_tower(t);
  CHECK(is_normalized(out.tower));
  CHECK(unconjugate(out.tower.matrices[0], out.sigma[0], out.sigma[1]) == a1);
}

TEST_CASE("non-surjective tower is rejected") {
  Tower t;
  RationalMatrix a1(2, 3);
  a1(1, 0) = 1;
  a1(1, 1) = 1;
  a1(0, 2) = rat(1, 2);
  a1(1, 2) = rat(1, 2);
  t.matrices.push_back(a1);
  REQUIRE_ERROR_KIND(normalize_tower(t), ErrorKind::not_surjective);
}

TEST_CASE("column distance examples") {
  const RationalMatrix a = identity_matrix(3);
  CHECK(column_distance(a, a) == 0);
  CHECK(column_distance(a, swapped_identity_column(3)) == 2);
  REQUIRE_ERROR_KIND(column_distance(a, identity_matrix(2)), ErrorKind::dimension_mismatch);
}

TEST_CASE("property: column distance is a metric") {
  checks::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const RationalMatrix a = random_stochastic(rng, 3, 4);
    const RationalMatrix b = random_stochastic(rng, 3, 4);
    const RationalMatrix c = random_stochastic(rng, 3, 4);
    CHECK(column_distance(a, b) == column_distance(b, a));
    CHECK(column_distance(a, c) <= column_distance(a, b) + column_distance(b, c));
    CHECK(column_distance(a, b) >= 0);
  }
}

TEST_CASE("conjugacy estimate") {
  checks::Rng rng(8);
  const Tower a = checks::random_positive_tower(rng, 5);
  const RationalVector x = checks::random_simplex_point(rng, 7, 20);

  const ConjugacyEstimate same = conjugacy_estimate(a, a, 1, 5, x);
  CHECK(same.x_nm == same.x_n);
  CHECK(same.deviation == 0);
  CHECK(same.bound == 0);

  // One perturbed level.
  Tower b = a;
  const Tower far = checks::perturb_tower(rng, a);
  b.matrices[2] = far.matrices[2];
  const ConjugacyEstimate one = conjugacy_estimate(a, b, 1, 5, x);
  CHECK(one.bound == column_distance(a.matrices[2], b.matrices[2]));
  CHECK(one.deviation <= one.bound);

  // Geometric distances.
  const ConjugacyEstimate geo = conjugacy_estimate(a, far, 2, 5, x);
  CHECK(geo.bound == rat(1, 4) + rat(1, 8) + rat(1, 16) + rat(1, 32));
  CHECK(geo.deviation <= geo.bound);
}

TEST_CASE("property: normalization round trip on fuzzed towers") {
  checks::Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Tower t = checks::random_surjective_tower(rng, 5);
    const NormalizedTower out = normalize_tower(t);
    CHECK(is_normalized(out.tower));
    for (std::size_t n = 1; n <= t.levels(); ++n) {
      const RationalMatrix& b = t.matrices[n - 1];
      const RationalMatrix& a = out.tower.matrices[n - 1];
      CHECK(oracle::permute(b, out.sigma[n - 1], out.sigma[n]) == a);
      CHECK(unconjugate(a, out.sigma[n - 1], out.sigma[n]) == b);
    }
  }
}
