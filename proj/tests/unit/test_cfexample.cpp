#include <doctest.h>

#include "helpers.hpp"
#include "kneadlab/cfexample.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

CfSpec twos(std::size_t count) { return CfSpec{2, std::vector<std::size_t>(count, 2)}; }

Matrix2 m2(long a, long b, long c, long d) {
  return Matrix2{{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}}};
}

}  // namespace

TEST_CASE("continued-fraction kneading map prefix") {
  const KneadingMap q = build_cf_q(twos(4), 4);
  const std::vector<std::size_t> expected{0, 0, 0, 1, 1};
  CHECK(std::vector<std::size_t>(q.values().begin(), q.values().end()) == expected);
}

TEST_CASE("property: continued-fraction maps are non-decreasing kneading maps") {
  checks::Rng rng(31);
  std::uniform_int_distribution<std::size_t> pick(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    CfSpec spec{pick(rng) + 1, {}};
    for (int i = 0; i < 6; ++i) spec.a.push_back(pick(rng));
    const KneadingMap q = build_cf_q(spec, cf_covered_depth(spec));
    CHECK_FALSE(q.first_invalid_index());
    for (std::size_t l = 1; l <= q.depth(); ++l) {
      CHECK(q(l) >= q(l - 1));
      CHECK(q(l) <= l - 1);
    }
    CHECK(check_admissible(q, q.depth()).status != AdmissibilityVerdict::Status::violation);
  }
}

TEST_CASE("continuant factors and products") {
  const ContinuantProducts c = continuant_products(twos(6), 2);
  CHECK(c.factors[0] == m2(1, 1, 1, 0));
  CHECK(c.factors[1] == m2(2, 1, 1, 0));
  CHECK(c.cumulative[2] == m2(5, 2, 2, 1));
  CHECK(mul(m2(2, 1, 1, 0), m2(2, 1, 1, 0)) == m2(5, 2, 2, 1));
}

TEST_CASE("convergents approach sqrt(2) - 1") {
  const ContinuantProducts c = continuant_products(twos(7), 6);
  const Convergent& last = c.convergents.back();
  CHECK(last.n == 6);
  CHECK(last.error_bound <= rat(1, 1000));
  CHECK(oracle::brackets_sqrt2_minus_1(last.value, last.error_bound));

  const ContinuantProducts ten = continuant_products(twos(11), 10);
  CHECK(ten.convergents.back().error_bound <= rat(1, 1000000));
  CHECK(oracle::brackets_sqrt2_minus_1(ten.convergents.back().value, ten.convergents.back().error_bound));
}

TEST_CASE("property: continuant identities") {
  checks::Rng rng(32);
  std::uniform_int_distribution<std::size_t> pick(1, 6);
  for (int trial = 0; trial < 30; ++trial) {
    CfSpec spec{2, {}};
    for (int i = 0; i < 9; ++i) spec.a.push_back(pick(rng));
    const ContinuantProducts c = continuant_products(spec, 8);
    const auto pq = oracle::continuants(spec.a);
    for (std::size_t i = 1; i <= 8; ++i) {
      const Integer d = det(c.cumulative[i]);
      CHECK((d == 1 || d == -1));
      const Convergent& conv = c.convergents[i - 1];
      CHECK(conv.p == pq[i - 1].p);
      CHECK(conv.q == pq[i - 1].q);
      if (spec.a[i - 1] > 1) {
        std::vector<Integer> expected{0};
        for (std::size_t j = 0; j < i; ++j) expected.emplace_back(spec.a[j]);
        CHECK(partial_quotients(conv.value) == expected);
      }
    }
  }
}

TEST_CASE("block incidence is the continuant factor") {
  const CfSpec spec{2, {1, 3, 2, 2, 4}};
  for (std::size_t n = 2; n <= 4; ++n) {
    const IntegerMatrix b = cf_block_incidence(spec, n);
    REQUIRE(b.rows() == 2);
    REQUIRE(b.cols() == 2);
    CHECK(b(0, 0) == Integer(spec.a[n - 1]));
    CHECK(b(0, 1) == 1);
    CHECK(b(1, 0) == 1);
    CHECK(b(1, 1) == 0);
  }
}

TEST_CASE("invalid continued-fraction specs") {
  REQUIRE_ERROR_KIND(validate(CfSpec{2, {2, 0}}), ErrorKind::invariant_violation);
}
