#include <doctest.h>

#include "helpers.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"
#include "kneadlab/odometer.hpp"

using namespace kneadlab;

namespace {

struct Ex1 {
  KneadingMap q = build_q_aq(checks::ex1x_spec(), 18);
  CuttingTimes s = cutting_times(q, 18);
};

using Support = std::vector<std::size_t>;

}  // namespace

TEST_CASE("expansion examples on EX1") {
  Ex1 e;
  CHECK(expand(Integer(0), e.q, e.s).support.empty());
  CHECK(expand(Integer(4), e.q, e.s).support == Support{0, 2});
  CHECK(expand(Integer(13), e.q, e.s).support == Support{6});
}

TEST_CASE("step examples on EX1") {
  Ex1 e;
  CHECK(step(expand(Integer(0), e.q, e.s), e.q, e.s).support == Support{0});
  CHECK(step(expand(Integer(1), e.q, e.s), e.q, e.s).support == Support{1});
  CHECK(step(expand(Integer(4), e.q, e.s), e.q, e.s).support == Support{3});
}

TEST_CASE("expansion beyond the cutting times fails") {
  Ex1 e;
  REQUIRE_ERROR_KIND(expand(e.s[18] * 4, e.q, e.s), ErrorKind::depth_exceeded);
}

TEST_CASE("q and sigma") {
  Ex1 e;
  const QSigma a = q_and_sigma(OdometerPoint{{0, 2}, std::nullopt}, 2, e.s);
  CHECK(a.q_index == 0);
  CHECK(a.sigma == 4);
  const QSigma b = q_and_sigma(OdometerPoint{{3}, std::nullopt}, 3, e.s);
  CHECK(b.q_index == 3);
  CHECK(b.sigma == 5);
  REQUIRE_ERROR_KIND(q_and_sigma(OdometerPoint{{}, std::nullopt}, 3, e.s), ErrorKind::zero_point);
}

TEST_CASE("forward and backward are inverse on finite points") {
  Ex1 e;
  for (long n = 1; Integer(n + 1) < e.s[18]; ++n) {
    const Expansion x = expand(Integer(n), e.q, e.s);
    const OdometerPoint p{x.support, std::nullopt};
    const OdometerPoint f = forward(p, e.q, e.s);
    CHECK(f.support == expand(Integer(n + 1), e.q, e.s).support);
    CHECK(backward(f, e.q, e.s) == p);
  }
}

TEST_CASE("separating time follows the shift branch") {
  Ex1 e;
  const OdometerPoint x{{3, 7}, 10};
  const OdometerPoint y{{5, 9}, 10};
  const Separation sep = find_separating_time(x, y, e.q, e.s, 5, 64);
  CHECK(sep.branch == "shift");
  CHECK(sep.m == -5);
  CHECK(std::max(sep.q_x, sep.q_x_prime) >= 5);
  CHECK(e.q(sep.q_x + 1) != e.q(sep.q_x_prime + 1));
}

TEST_CASE("separating time is zero when already separated") {
  Ex1 e;
  // q = 3 and q = 6 with Q(4) = 2 and Q(7) = 4.
  const OdometerPoint x{{3, 9}, 10};
  const OdometerPoint y{{6, 9}, 10};
  const Separation sep = find_separating_time(x, y, e.q, e.s, 5, 64);
  CHECK(sep.m == 0);
  CHECK(sep.branch == "direct");
}

TEST_CASE("identical cylinders are rejected") {
  Ex1 e;
  const OdometerPoint x{{3, 7}, 10};
  REQUIRE_ERROR_KIND(find_separating_time(x, x, e.q, e.s, 5, 8), ErrorKind::invalid_input);
}

TEST_CASE("property: greedy expansion equals the exhaustive oracle") {
  checks::Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const KneadingMap q = checks::random_resonant_map(rng, 15, 6);
    const std::size_t count = 14;
    const CuttingTimes s = cutting_times(q, 15);
    const std::size_t limit = s[count].get_ui();
    const auto table = oracle::enumerate_sums(q.values(), {s.values().begin(), s.values().end()},
                                              count, limit);
    CAPTURE(trial);
    REQUIRE(table.size() == limit);
    for (const auto& [n, sums] : table) {
      const Expansion x = expand(Integer(static_cast<unsigned long>(n)), q, s);
      CHECK(x.support == sums.top_dominant_max);
      REQUIRE(sums.omega_solutions.size() == 1);
      CHECK(sums.omega_solutions.front() == x.support);
      CHECK_FALSE(omega_violation(q, x.support));
    }
  }
}

TEST_CASE("property: step, sigma and membership on EX1") {
  Ex1 e;
  const std::size_t top = e.s[17].get_ui();
  Expansion x = expand(Integer(0), e.q, e.s);
  for (std::size_t n = 0; n + 1 < top; ++n) {
    CHECK(oracle::in_omega(e.q.values(), x.support));
    const OdometerPoint p{x.support, std::nullopt};
    if (!x.support.empty()) {
      Integer previous = 0;
      for (std::size_t k = 0; k <= 17; ++k) {
        const Integer sigma = q_and_sigma(p, k, e.s).sigma;
        CHECK(sigma >= previous);
        previous = sigma;
      }
      CHECK(previous == x.n);
    }
    const Expansion next = step(x, e.q, e.s);
    CHECK(next == expand(x.n + 1, e.q, e.s));
    x = next;
  }
}
