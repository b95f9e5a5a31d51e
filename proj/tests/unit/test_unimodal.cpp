#include <doctest.h>

#include "helpers.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/unimodal.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

// Cutting times from the kneading sequence alone: after S_{k-1} the itinerary
// repeats its own beginning until the first disagreement, which is at S_k.
std::vector<std::size_t> itinerary_cutting_times(const Rational& slope, std::size_t N) {
  const Rational c(1, 2);
  std::vector<int> nu(N + 1, 0);
  Rational x = c;
  for (std::size_t n = 1; n <= N; ++n) {
    x = x <= c ? Rational(slope * x) : Rational(slope * (1 - x));
    REQUIRE(x != c);
    nu[n] = x > c ? 1 : 0;
  }
  std::vector<std::size_t> out{1};
  while (true) {
    const std::size_t prev = out.back();
    std::size_t j = 1;
    while (prev + j <= N && nu[prev + j] == nu[j]) ++j;
    if (prev + j > N) break;
    out.push_back(prev + j);
  }
  return out;
}

std::vector<Integer> as_integers(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("slope 2 cuts at every time") {
  const CuttingTimeRun run = cutting_times_tent(Rational(2), 6);
  CHECK(run.cutting_times == std::vector<std::size_t>{1, 2, 3, 4, 5, 6});
  for (std::size_t n = 2; n <= 6; ++n) CHECK(run.chain[n - 1] == ClosedInterval{0, 1});
}

TEST_CASE("slopes outside (1, 2] are rejected") {
  REQUIRE_ERROR_KIND(TentMap(rat(1, 2)), ErrorKind::precondition_violation);
  REQUIRE_ERROR_KIND(TentMap(rat(5, 2)), ErrorKind::precondition_violation);
  REQUIRE_ERROR_KIND(cutting_times_tent(Rational(1), 4), ErrorKind::precondition_violation);
}

TEST_CASE("slope 8/5 against the itinerary oracle") {
  const CuttingTimeRun run = cutting_times_tent(rat(8, 5), 20);
  const std::vector<std::size_t> oracle = itinerary_cutting_times(rat(8, 5), 20);
  // The oracle only sees cutting times whose successor is also within N.
  REQUIRE(oracle.size() <= run.cutting_times.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(run.cutting_times[i] == oracle[i]);
  for (std::size_t n = 1; n <= 20; ++n) {
    const bool cut = std::find(run.cutting_times.begin(), run.cutting_times.end(), n) !=
                     run.cutting_times.end();
    CHECK(run.chain[n - 1].contains(TentMap::critical_point()) == cut);
  }
}

TEST_CASE("property: tent cutting times agree with the itinerary oracle") {
  checks::Rng rng(41);
  std::uniform_int_distribution<long> num(13, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational s = rat(num(rng) * 7 + trial % 7, 70);
    if (s <= 1 || s > 2) continue;
    CAPTURE(s.get_str());
    const std::vector<Integer> lib = tent_cutting_times(s, 6);
    const std::vector<std::size_t> oracle = itinerary_cutting_times(s, to_size(lib.back()) + 40);
    REQUIRE(oracle.size() >= lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i] == Integer(oracle[i]));
  }
}

TEST_CASE("kneading prefix of slope 2 is zero") {
  const KneadingMap q = kneading_prefix(Rational(2), 5);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(q(k) == 0);
}

TEST_CASE("kneading prefix round trip") {
  for (const Rational& s : {rat(8, 5), rat(3, 2), rat(19, 10), rat(17, 10)}) {
    const KneadingMap q = kneading_prefix(s, 7);
    const CuttingTimes ct = cutting_times(q, 7);
    CHECK(std::vector<Integer>(ct.values().begin(), ct.values().end()) == tent_cutting_times(s, 7));
  }
}

TEST_CASE("kneading prefix of slope 8/5") {
  const KneadingMap q = kneading_prefix(rat(8, 5), 5);
  const std::vector<Integer> s = tent_cutting_times(rat(8, 5), 5);
  const std::vector<std::size_t> oracle = itinerary_cutting_times(rat(8, 5), 60);
  CHECK(std::vector<Integer>(s.begin(), s.end()) ==
        as_integers({oracle.begin(), oracle.begin() + 6}));
  CHECK(q(1) == 0);
}

TEST_CASE("fit recovers slope 2 for the zero map") {
  const KneadingMap zero(std::vector<std::size_t>(6, 0));
  const SlopeFit fit = fit_slope(zero, 5, 50);
  CHECK(fit.matched);
  CHECK(fit.lo <= 2);
  CHECK(fit.hi == 2);
  const KneadingMap got = kneading_prefix(fit.mid, 5);
  CHECK(std::vector<std::size_t>(got.values().begin(), got.values().end()) ==
        std::vector<std::size_t>(6, 0));
}

TEST_CASE("fit recovers the Fibonacci prefix") {
  const KneadingMap fib = checks::fibonacci_map(8);
  const SlopeFit fit = fit_slope(fib, 8, 200);
  REQUIRE(fit.matched);
  CHECK(fit.lo <= fit.mid);
  CHECK(fit.mid <= fit.hi);
  const KneadingMap got = kneading_prefix(fit.mid, 8);
  CHECK(std::vector<std::size_t>(got.values().begin(), got.values().end()) ==
        std::vector<std::size_t>(fib.values().begin(), fib.values().end()));
}

TEST_CASE("fit rejects maps that are not realizable this way") {
  const KneadingMap bad({0, 0, 1, 1});
  REQUIRE_ERROR_KIND(fit_slope(bad, 3, 10), ErrorKind::precondition_violation);
}

TEST_CASE("property: the prefix comparator is monotone in the slope") {
  checks::Rng rng(42);
  std::uniform_int_distribution<long> num(101, 200);
  for (int trial = 0; trial < 40; ++trial) {
    long a = num(rng), b = num(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const Rational s = rat(a, 100), t = rat(b, 100);
    const std::vector<Integer> st = tent_cutting_times(t, 6);
    const std::vector<Integer> ss = tent_cutting_times(s, 6);
    const PrefixComparison low = compare_prefix(s, st);
    if (low.first_difference) CHECK(low.slope_sparser);
    const PrefixComparison high = compare_prefix(t, ss);
    if (high.first_difference) CHECK_FALSE(high.slope_sparser);
  }
}
