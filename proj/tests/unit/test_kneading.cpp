#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"
#include "kneadlab/kneading.hpp"

using namespace kneadlab;
using kneadlab::test::ints;

namespace {

KneadingMap table(std::vector<std::size_t> v, std::size_t tail = 0) {
  return KneadingMap(std::move(v), MapSource::table, tail);
}

std::vector<Integer> as_vector(const CuttingTimes& s) {
  return {s.values().begin(), s.values().end()};
}

}  // namespace

TEST_CASE("cutting times of the zero map count up by one") {
  CHECK(as_vector(cutting_times(table({0, 0, 0, 0, 0, 0}), 5)) == ints({1, 2, 3, 4, 5, 6}));
}

TEST_CASE("cutting times of the Fibonacci map") {
  CHECK(as_vector(cutting_times(checks::fibonacci_map(5), 5)) == ints({1, 2, 3, 5, 8, 13}));
}

TEST_CASE("cutting times of EX1") {
  const KneadingMap q = build_q_aq(checks::ex1_spec(), 7);
  CHECK(as_vector(cutting_times(q, 7)) == ints({1, 2, 3, 5, 8, 10, 13, 21}));
}

TEST_CASE("cutting times reject depth beyond the table and invalid maps") {
  REQUIRE_ERROR_KIND(cutting_times(table({0, 0, 1}), 3), ErrorKind::depth_exceeded);
  REQUIRE_ERROR_KIND(cutting_times(table({0, 1}), 1), ErrorKind::invalid_map);
}

TEST_CASE("admissibility verdicts") {
  using Status = AdmissibilityVerdict::Status;
  CHECK(check_admissible(table({0, 0, 0, 0, 0, 0, 0}), 6).status == Status::admissible);

  const AdmissibilityVerdict bad = check_admissible(table({0, 1, 0}), 4);
  CHECK(bad.status == Status::violation);
  CHECK(bad.index == 1);

  const KneadingMap ex1 = build_q_aq(checks::ex1_spec(), 11);
  CHECK(check_admissible(ex1, 6).status != Status::violation);
}

TEST_CASE("EX1 kneading map values") {
  const KneadingMap q = build_q_aq(checks::ex1_spec(), 11);
  const std::vector<std::size_t> expected{0, 0, 0, 1, 2, 1, 2, 4, 5, 5, 6, 6};
  CHECK(std::vector<std::size_t>(q.values().begin(), q.values().end()) == expected);
  CHECK(build_q_aq(checks::ex1_spec(), 2).values().size() == 3);
}

TEST_CASE("AQ map beyond the spec is insufficient") {
  const Integer covered = covered_depth(checks::ex1_spec());
  REQUIRE_ERROR_KIND(build_q_aq(checks::ex1_spec(), to_size(covered) + 1),
                     ErrorKind::insufficient_spec);
}

TEST_CASE("AQ spec validation names the broken field") {
  AqSpec s = checks::ex1_spec();
  s.q[0] = 1;
  REQUIRE_ERROR_KIND(validate(s), ErrorKind::invariant_violation);

  s = checks::ex1_spec();
  s.a[1][0] = 0;
  REQUIRE_ERROR_KIND(validate(s), ErrorKind::invariant_violation);

  s = checks::ex1_spec();
  s.q[6] = 12;
  REQUIRE_ERROR_KIND(validate(s), ErrorKind::invariant_violation);
}

TEST_CASE("doubly resonant lemma") {
  CHECK(check_doubly_resonant(checks::ex1_spec(), 11).part1_pass);

  const DoublyResonantReport bad = check_doubly_resonant(table({0, 0, 1, 2, 3}), Integer(100));
  CHECK_FALSE(bad.part1_pass);
  REQUIRE(bad.part1_counterexample);
  CHECK(*bad.part1_counterexample == 2);

  const AqSpec x = checks::ex1x_spec();
  const DoublyResonantReport ext = check_doubly_resonant(x, to_size(x.q[5]) + 3);
  CHECK(ext.pass());
  CHECK(ext.part2_first == to_size(x.q[5]) + 1);
}

TEST_CASE("triangular indices") {
  for (std::size_t n = 1; n < 20; ++n) {
    CHECK(triangular_index(n) == triangular_index(n - 1) + n + 1);
  }
  CHECK(triangular_index(0) == 1);
}

TEST_CASE("property: fuzzed AQ maps") {
  checks::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const AqSpec spec = checks::random_aq_spec(rng, 1 + trial % 4, 3);
    const std::size_t K = to_size(covered_depth(spec));
    const KneadingMap q = build_q_aq(spec, K);
    CAPTURE(trial);

    for (std::size_t k = 0; k <= to_size(spec.q[2]); ++k) CHECK(q(k) == 0);
    std::set<Integer> qs(spec.q.begin(), spec.q.end());
    for (std::size_t k = 0; k <= K; ++k) CHECK(qs.count(Integer(q(k))) == 1);

    // Recursion re-checked against an independent evaluation.
    const CuttingTimes s = cutting_times(q, K);
    CHECK(as_vector(s) == oracle::cutting_times(q.values()));
    for (std::size_t k = 1; k <= K; ++k) CHECK(s[k] == s[k - 1] + s[q(k)]);

    CHECK(check_admissible(q, K).status != AdmissibilityVerdict::Status::violation);

    // Blocks partition I_n and J_n and carry the block values.
    const BlockIndex b = block_index(spec);
    for (std::size_t n = 1; n < b.I.size() && n < b.I_parts.size(); ++n) {
      if (!b.I[n] || b.I_parts[n].empty()) continue;
      CHECK(b.I_parts[n].front().lo == b.I[n]->lo);
      CHECK(b.I_parts[n].back().hi == b.I[n]->hi);
      for (std::size_t m = 0; m < b.I_parts[n].size(); ++m) {
        if (m > 0) CHECK(b.I_parts[n][m].lo == b.I_parts[n][m - 1].hi + 1);
        const Interval& part = b.I_parts[n][m];
        if (part.hi > K) continue;
        for (Integer k = part.lo; k <= part.hi; ++k) {
          CHECK(Integer(q(to_size(k))) == spec.q[triangular_index(n - 1) + m]);
        }
      }
    }
  }
}
