#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"
#include "kneadlab/io.hpp"
#include "kneadlab/realization.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

Rational l1(const RationalVector& a, const RationalVector& b) { return one_norm(subtract(a, b)); }

}  // namespace

TEST_CASE("Xi_1 of EX1") {
  const RationalMatrix xi = xi_matrix(checks::ex1_spec(), 1);
  REQUIRE(xi.rows() == 2);
  REQUIRE(xi.cols() == 3);
  CHECK(xi(0, 2) == rat(3, 4));
  CHECK(xi(1, 2) == rat(1, 4));
  CHECK(xi(0, 0) == 1);
  CHECK(xi(1, 1) == 1);
}

TEST_CASE("property: Xi_n fixes unit vectors and is stochastic") {
  checks::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const AqSpec spec = checks::random_aq_spec(rng, 4, 3);
    for (std::size_t n = 1; n <= 3; ++n) {
      const RationalMatrix xi = xi_matrix(spec, n);
      for (std::size_t m = 0; m <= n; ++m) {
        for (std::size_t i = 0; i <= n; ++i) CHECK(xi(i, m) == (i == m ? 1 : 0));
      }
      CHECK(is_stochastic(xi));
    }
  }
}

TEST_CASE("Xi_n beyond the spec is insufficient") {
  REQUIRE_ERROR_KIND(xi_matrix(checks::ex1_spec(), 3), ErrorKind::insufficient_spec);
}

TEST_CASE("full block of EX1X at n = 1") {
  const AqSpec spec = checks::ex1x_spec();
  const FullBlock fb = full_block_product(spec, 1);
  CHECK(fb.first_level == 6);
  CHECK(fb.last_level == 12);
  CHECK_FALSE(fb.first_mismatch);
  CHECK(fb.product == fb.closed_form);
  CHECK(fb.rank == 3);

  const RationalMatrix claimed =
      io::matrix_from(io::load_json(KNEADLAB_TEST_DATA "/ex1x_block1.json")["matrix"], "matrix");
  CHECK(claimed == fb.product);
}

TEST_CASE("full block needs more of q than EX1 defines") {
  REQUIRE_ERROR_KIND(full_block_product(checks::ex1_spec(), 1), ErrorKind::insufficient_spec);
}

TEST_CASE("block vector at the start of the block is a unit vector") {
  const AqSpec spec = checks::ex1x_spec();
  const AqTables t(spec, full_block_levels(spec, 1));
  const std::size_t start = to_size(spec.q[triangular_index(1)]);
  const RationalVector v = block_vector(t, 1, start);
  const auto& labels = t.diagram.levels[start + 1];
  for (std::size_t i = 0; i < labels.size(); ++i) CHECK(v[i] == (labels[i] == start + 1 ? 1 : 0));
}

TEST_CASE("proof matrices of EX1X at n = 2") {
  const ProofMatrices p = proof_matrices(checks::ex1x_spec(), 2);
  CHECK(p.pass());
  CHECK(is_stochastic(p.pi_n));
  CHECK(is_stochastic(p.pi_prev));
  CHECK(p.lhs == p.rhs);
  CHECK(p.column_n_equal);
  for (std::size_t i = 0; i < p.a_n.rows(); ++i) CHECK(p.a_n(i, 2) == (i == 2 ? 1 : 0));
  CHECK(p.column_norms == p.column_norm_closed);
}

TEST_CASE("property: full block and proof matrices on fuzzed specs") {
  checks::Rng rng(22);
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const AqSpec spec = checks::random_aq_spec(rng, n + 1, 3);
    CAPTURE(trial);
    const FullBlock fb = full_block_product(spec, n);
    CHECK(fb.product == fb.closed_form);
    CHECK(fb.rank == n + 2);
    CHECK(oracle::rational_rank(fb.product) == n + 2);
    if (n >= 2) CHECK(proof_matrices(spec, n).pass());
  }
}

TEST_CASE("realization from a unit target") {
  TargetColumns t{{RationalVector{1, 0}}};
  const Realization r = approximate_targets(t, Integer(1));
  CHECK(r.pass());
  REQUIRE(r.spec.a.size() >= 1);
  CHECK(r.spec.a[0].back() >= 1);
  for (const Integer& x : r.spec.a[0]) CHECK(x >= 1);
}

TEST_CASE("realization meets the level bounds exactly") {
  TargetColumns t{{RationalVector{rat(1, 2), rat(1, 2)},
                   RationalVector{rat(1, 3), rat(1, 3), rat(1, 3)}}};
  const Realization r = approximate_targets(t, Integer(1));
  REQUIRE(r.levels.size() == 2);
  CHECK(r.pass());
  validate(r.spec);
  for (const LevelReport& l : r.levels) {
    CHECK(l.l1_error <= Rational(1, static_cast<unsigned long>(l.n * l.n)));
    CHECK(l.l1_error == l1(l.zeta_normalized, t.y[l.n - 1]));
    for (const GrowthCheck& g : l.growth) CHECK(g.ratio <= g.bound);
  }
  // Jump condition q_{r_n} - q_{r_n - 1} = sum of a_n.
  for (std::size_t n = 1; n <= r.spec.a.size(); ++n) {
    Integer sum = 0;
    for (const Integer& x : r.spec.a[n - 1]) sum += x;
    const std::size_t rn = triangular_index(n);
    CHECK(r.spec.q[rn] - r.spec.q[rn - 1] == sum);
  }
}

TEST_CASE("invalid targets are rejected") {
  TargetColumns bad{{RationalVector{rat(1, 2), rat(1, 3)}}};
  REQUIRE_ERROR_KIND(validate(bad), ErrorKind::invalid_targets);
  TargetColumns shape{{RationalVector{1, 0, 0}}};
  REQUIRE_ERROR_KIND(validate(shape), ErrorKind::invalid_targets);
}

TEST_CASE("property: summability on fuzzed specs") {
  checks::Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const AqSpec spec = checks::random_aq_spec(rng, 4, 3);
    CHECK(summability(spec, 3).pass());
  }
}
