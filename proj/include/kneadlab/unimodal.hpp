#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kneadlab/kneading.hpp"
#include "kneadlab/numeric.hpp"

namespace kneadlab {

/// f(x) = s x on [0, 1/2] and s (1 - x) on [1/2, 1], with s in (1, 2].
class TentMap {
 public:
  explicit TentMap(Rational slope);

  const Rational& slope() const noexcept { return slope_; }
  Rational operator()(const Rational& x) const;
  static Rational critical_point() { return Rational(1, 2); }

 private:
  Rational slope_;
};

struct ClosedInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const ClosedInterval&) const = default;
};

struct CuttingTimeRun {
  std::vector<Rational> orbit;            // c_0 = c, c_1, ..., c_N
  std::vector<ClosedInterval> chain;      // chain[n-1] = D_n, n = 1..N
  std::vector<std::size_t> cutting_times; // n <= N with c in D_n
};

/// D_1 = [c, c_1]; D_n = f(D_{n-1}) when c is not in D_{n-1}, else [c_n, c_1].
CuttingTimeRun cutting_times_tent(const Rational& slope, std::size_t N);

/// First K+1 cutting times, extending the orbit adaptively up to `orbit_cap`.
std::vector<Integer> tent_cutting_times(const Rational& slope, std::size_t K,
                                        std::size_t orbit_cap = 1u << 16);

/// Q(0..K) from the differences S_k - S_{k-1}, each of which must be an
/// earlier cutting time.
KneadingMap kneading_prefix(const Rational& slope, std::size_t K);

struct SlopeFit {
  Rational lo;
  Rational hi;
  Rational mid;
  bool matched = false;
  std::size_t iterations = 0;
  std::optional<std::size_t> mismatch_index;  // first differing S_k at the last midpoint
  std::string diagnostics;
};

/// Bisection on (1, 2]. At the first k where the cutting times differ, a
/// larger S_k at the midpoint means the slope is too small.
SlopeFit fit_slope(const KneadingMap& target, std::size_t K, std::size_t max_iter);

/// Compares the first K+1 cutting times of `slope` against `target_s`.
/// Returns nullopt on a full match, otherwise the first differing index and
/// whether the slope's cutting time is the larger one there.
struct PrefixComparison {
  std::optional<std::size_t> first_difference;
  bool slope_sparser = false;
};
PrefixComparison compare_prefix(const Rational& slope, const std::vector<Integer>& target_s);

}  // namespace kneadlab
